#include <gtest/gtest.h>

#include <map>
#include <set>
#include <utility>

#include "mexcode/graph.hpp"
#include "mexcode/oracle.hpp"
#include "mexcode/parser.hpp"
#include "support/test_oracles.hpp"

namespace mexcode {
namespace {

using testing::evaluate;
using testing::random_assignment;
using testing::reference_binarize;

// Counts taken straight from the tree: every symbol name collapses to one
// vertex, and an operator meeting the same name twice gets a single edge.
struct TreeCounts {
  std::size_t nodes = 0;
  std::size_t symbol_occurrences = 0;
  std::set<std::string> names;
  std::size_t repeated_operands = 0;
};

void count(const Ast& ast, TreeCounts& c) {
  ++c.nodes;
  if (ast.kind() == Ast::Kind::Sym) {
    ++c.symbol_occurrences;
    c.names.insert(ast.text());
  }
  std::multiset<std::string> seen;
  for (const auto& child : ast.children()) {
    if (child.kind() == Ast::Kind::Sym) {
      if (seen.count(child.text()) > 0) ++c.repeated_operands;
      seen.insert(child.text());
    }
    count(child, c);
  }
}

bool arity_at_most_two(const Ast& ast) {
  if (ast.children().size() > 2) return false;
  for (const auto& c : ast.children()) {
    if (!arity_at_most_two(c)) return false;
  }
  return true;
}

TEST(BuildGraph, PowerPlusSymbol) {
  const ExpressionGraph g = build_graph(parse("x^2+y"));
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.vertices[0], VertexLabel::oper(OpKind::Add));
  EXPECT_EQ(g.vertices[1], VertexLabel::oper(OpKind::Pow));
  EXPECT_EQ(g.vertices[2], VertexLabel::symbol("x"));
  EXPECT_EQ(g.vertices[3], VertexLabel::number("2"));
  EXPECT_EQ(g.vertices[4], VertexLabel::symbol("y"));
  EXPECT_EQ(g.root, 0u);
  EXPECT_EQ(g.child_order[0], (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(g.child_order[1], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 4}, {1, 2}, {1, 3}}));
}

TEST(BuildGraph, SharedSymbolsSeparateNumbers) {
  const ExpressionGraph g = build_graph(parse("sin(x)cos(x)"));
  EXPECT_EQ(g.size(), 4u);
  const ExpressionGraph h = build_graph(parse("2+2"));
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.edges().size(), 2u);
}

TEST(BuildGraph, RepeatedOperandCollapsesToOneEdge) {
  const ExpressionGraph g = build_graph(parse("x*x"));
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(g.child_order[g.root].size(), 2u);
}

TEST(BuildGraph, EmittedLabels) {
  EXPECT_EQ(VertexLabel::symbol("R").emitted(), "Sym");
  EXPECT_EQ(VertexLabel::symbol("R", true).emitted(), "Sym:R");
  EXPECT_EQ(VertexLabel::number("3.14", true).emitted(), "Num:3.14");
  EXPECT_EQ(VertexLabel::oper(OpKind::Sqrt).emitted(), "Sqrt");
}

TEST(BuildGraph, Preservation) {
  EncoderConfig config;
  config.preserve_symbols = {"R"};
  config.preserve_numbers = {"3.14"};
  config.preserve_exponents = {"2"};
  const ExpressionGraph g = build_graph(parse("3.14*R^2 + 2*r^2 + x^3"), config);
  std::multiset<std::string> labels;
  for (const auto& v : g.vertices) labels.insert(v.emitted());
  EXPECT_EQ(labels.count("Sym:R"), 1u);
  EXPECT_EQ(labels.count("Num:3.14"), 1u);
  EXPECT_EQ(labels.count("Num:2"), 2u);  // exponents only
  EXPECT_EQ(labels.count("Num"), 2u);    // the coefficient 2 and the 3
}

TEST(BuildGraph, CountsMatchTree) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Ast ast = gen_random_ast(seed, 6, 3);
    TreeCounts c;
    count(ast, c);
    const ExpressionGraph g = build_graph(ast);
    EXPECT_EQ(g.size(), c.nodes - c.symbol_occurrences + c.names.size());
    EXPECT_EQ(g.edges().size(), c.nodes - 1 - c.repeated_operands) << to_sexpr(ast);
    EXPECT_EQ(to_ast(g), ast);
  }
}

TEST(BuildGraph, RenamingKeepsShape) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Ast ast = gen_random_ast(seed, 5, 4);
    const ExpressionGraph a = build_graph(ast);
    const ExpressionGraph b = build_graph(rename_symbols(ast, seed + 1));
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_EQ(a.child_order, b.child_order);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.vertices[i].emitted(), b.vertices[i].emitted());
    }
  }
}

TEST(Binarize, Examples) {
  EXPECT_EQ(to_sexpr(binarize(parse("a+b+c"))), "(Add (Add b c) a)");
  EXPECT_EQ(to_sexpr(binarize(parse("2*x*y*z"))), "(Mul (Mul (Mul y z) x) 2)");
  EXPECT_EQ(to_sexpr(binarize(parse("x+y"))), "(Add x y)");
  EXPECT_EQ(to_sexpr(binarize(parse("sin(a*b*c)^2"))), "(Pow (sin (Mul (Mul b c) a)) 2)");
}

TEST(Binarize, MatchesReferenceAndPreservesValue) {
  std::size_t defined = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Ast ast = gen_random_ast(seed, 6, 4);
    const Ast bin = binarize(ast);
    ASSERT_EQ(bin, reference_binarize(ast));
    ASSERT_TRUE(arity_at_most_two(bin));
    EXPECT_EQ(binarize(bin), bin);
    Rng rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
      const auto env = random_assignment(ast, rng);
      const auto lhs = evaluate(ast, env);
      const auto rhs = evaluate(bin, env);
      ASSERT_EQ(lhs.has_value(), rhs.has_value()) << to_sexpr(ast);
      if (lhs) {
        EXPECT_EQ(*lhs, *rhs) << to_sexpr(ast);
        ++defined;
      }
    }
  }
  EXPECT_GT(defined, 300u);
}

}  // namespace
}  // namespace mexcode
