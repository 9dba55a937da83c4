#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "mexcode/canonical.hpp"
#include "mexcode/error.hpp"
#include "mexcode/graph.hpp"
#include "mexcode/oracle.hpp"
#include "mexcode/parser.hpp"

namespace mexcode {
namespace {

CanonicalGraph canon(std::string_view source) { return canonicalize(build_graph(parse(source))); }

std::vector<std::string> labels(const ExpressionGraph& g) {
  std::vector<std::string> out;
  for (const auto& v : g.vertices) out.push_back(v.emitted());
  return out;
}

std::string root_children(const ExpressionGraph& g) {
  std::string out;
  for (std::size_t c : g.child_order[g.root]) {
    out += g.vertices[c].is_leaf() ? g.vertices[c].detail : std::string(op_name(g.vertices[c].op));
    out += ' ';
  }
  return out;
}

TEST(StructuralKey, ClassThenRank) {
  const ExpressionGraph g = build_graph(parse("x^2 + 3*y + x + 7"));
  const auto& kids = g.child_order[g.root];
  const StructuralKey pow = structural_key(g, kids[0]);
  const StructuralKey mul = structural_key(g, kids[1]);
  const StructuralKey sym = structural_key(g, kids[2]);
  const StructuralKey num = structural_key(g, kids[3]);
  EXPECT_LT(pow, mul);
  EXPECT_LT(mul, sym);
  EXPECT_LT(sym, num);
  EXPECT_EQ(sym.leaf_label, "Sym");
  EXPECT_EQ(structural_key(g, kids[2]), structural_key(build_graph(parse("q")), 0));
}

TEST(SortChildren, OperatorsThenSymbolsThenNumbers) {
  const SortedGraph s = sort_children(build_graph(parse("2 + x + sin(y) + a^2")));
  EXPECT_EQ(root_children(s.graph), "Pow Sin x 2 ");
  EXPECT_EQ(s.tie_break_events, 0u);
}

TEST(SortChildren, NonCommutativeKeepsOrder) {
  const SortedGraph s = sort_children(build_graph(parse("2/x")));
  EXPECT_EQ(root_children(s.graph), "2 x ");
  const SortedGraph p = sort_children(build_graph(parse("2^x")));
  EXPECT_EQ(root_children(p.graph), "2 x ");
}

TEST(SortChildren, CountsAlphabeticalFallbacks) {
  EXPECT_EQ(sort_children(build_graph(parse("y+x"))).tie_break_events, 1u);
  EXPECT_EQ(root_children(sort_children(build_graph(parse("y+x"))).graph), "x y ");
  EXPECT_EQ(sort_children(build_graph(parse("(x+y)^2"))).tie_break_events, 1u);
  EXPECT_EQ(sort_children(build_graph(parse("a+b+c"))).tie_break_events, 2u);
  EXPECT_EQ(sort_children(build_graph(parse("x^2+y"))).tie_break_events, 0u);
  // x also sits under a Pow, y does not: the incidence signature decides.
  EXPECT_EQ(sort_children(build_graph(parse("y + x + x^2"))).tie_break_events, 0u);
  // Same symbol twice is not a tie between distinct vertices.
  EXPECT_EQ(sort_children(build_graph(parse("x*x"))).tie_break_events, 0u);
}

TEST(SortChildren, RejectPolicy) {
  try {
    sort_children(build_graph(parse("x+y")), TieBreak::Reject);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbiguousOrdering);
  }
  EXPECT_NO_THROW(sort_children(build_graph(parse("x^2+y")), TieBreak::Reject));
}

TEST(SortChildren, Idempotent) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const SortedGraph once = sort_children(build_graph(gen_random_ast(seed, 6, 4)));
    const SortedGraph twice = sort_children(once.graph);
    EXPECT_EQ(twice.graph, once.graph);
    EXPECT_EQ(twice.tie_break_events, once.tie_break_events);
  }
}

TEST(OrderVertices, Examples) {
  EXPECT_EQ(labels(canon("x^2+y").graph),
            (std::vector<std::string>{"Sym", "Num", "Sym", "Pow", "Add"}));
  EXPECT_EQ(labels(canon("sin(x)cos(x)").graph),
            (std::vector<std::string>{"Sym", "Sin", "Cos", "Mul"}));
  EXPECT_EQ(labels(canon("(2xy+5)/y").graph),
            (std::vector<std::string>{"Sym", "Sym", "Num", "Num", "Mul", "Add", "Div"}));
  EXPECT_EQ(canon("x").graph.size(), 1u);
}

TEST(OrderVertices, LeavesFirstRootLastSourceIsPermutation) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ExpressionGraph g = build_graph(gen_random_ast(seed, 6, 4));
    const CanonicalGraph c = canonicalize(g);
    const auto& cg = c.graph;
    ASSERT_EQ(cg.size(), g.size());
    EXPECT_EQ(cg.root, cg.size() - 1);
    const auto first_op = std::find_if(cg.vertices.begin(), cg.vertices.end(),
                                       [](const VertexLabel& v) { return !v.is_leaf(); });
    EXPECT_TRUE(std::all_of(first_op, cg.vertices.end(),
                            [](const VertexLabel& v) { return !v.is_leaf(); }));
    std::vector<std::size_t> seen = c.source;
    std::sort(seen.begin(), seen.end());
    std::vector<std::size_t> expected(g.size());
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(seen, expected);
    for (std::size_t i = 0; i < cg.size(); ++i) {
      EXPECT_EQ(cg.vertices[i], g.vertices[c.source[i]]);
    }
    // Operands come before their operator.
    for (std::size_t v = 0; v < cg.size(); ++v) {
      for (std::size_t child : cg.child_order[v]) EXPECT_LT(child, v);
    }
  }
}

TEST(Canonicalize, InvariantUnderRenamingAndShuffling) {
  std::size_t tie_free = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Ast ast = gen_random_ast(seed, 5, 4);
    const CanonicalGraph a = canonicalize(build_graph(ast));
    const CanonicalGraph b = canonicalize(build_graph(make_twin(ast, seed * 7 + 1)));
    if (a.tie_break_events > 0 || b.tie_break_events > 0) continue;
    ++tie_free;
    EXPECT_EQ(labels(a.graph), labels(b.graph)) << to_sexpr(ast);
    EXPECT_EQ(a.graph.edges(), b.graph.edges()) << to_sexpr(ast);
  }
  EXPECT_GT(tie_free, 200u);
}

TEST(Canonicalize, ShufflingAloneNeverMatters) {
  // Without renaming even the alphabetical fallback sees the same names.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Ast ast = gen_random_ast(seed, 6, 4);
    const CanonicalGraph a = canonicalize(build_graph(ast));
    const CanonicalGraph b = canonicalize(build_graph(shuffle_commutative(ast, seed + 3)));
    EXPECT_EQ(a.graph, b.graph) << to_sexpr(ast);
  }
}

}  // namespace
}  // namespace mexcode
