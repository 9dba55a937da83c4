#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mexcode/config.hpp"
#include "mexcode/parser.hpp"

namespace mexcode {

enum class VertexClass { Op = 0, Sym = 1, Num = 2 };

// Declaration order is the operator rank used for canonical ordering.
enum class OpKind { Pow, Mul, Div, Add, Neg, Sin, Cos, Tan, Log, Exp, Sqrt };

std::string_view op_name(OpKind op);
bool is_commutative(OpKind op);
int op_rank(OpKind op);

struct VertexLabel {
  VertexClass cls = VertexClass::Sym;
  OpKind op = OpKind::Add;  // meaningful only for Op vertices
  // Symbol name or numeral as written; empty for Op vertices.
  std::string detail;
  // Emit "Sym:<name>" / "Num:<numeral>" instead of the bare class.
  bool preserved = false;

  static VertexLabel symbol(std::string name, bool preserved = false);
  static VertexLabel number(std::string numeral, bool preserved = false);
  static VertexLabel oper(OpKind op);

  // Text that appears in the code string.
  std::string emitted() const;

  bool is_leaf() const { return cls != VertexClass::Op; }

  bool operator==(const VertexLabel&) const = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected labeled expression graph. Symbol leaves are shared by name,
// numeric leaves are one vertex per occurrence. `child_order[v]` lists the
// operands of Op vertex v in order (empty for leaves); the edge set is
// derived from it.
struct ExpressionGraph {
  std::vector<VertexLabel> vertices;
  std::vector<std::vector<std::size_t>> child_order;
  std::size_t root = 0;

  std::size_t size() const { return vertices.size(); }

  // Sorted, deduplicated pairs (i, j) with i < j.
  std::vector<Edge> edges() const;

  bool operator==(const ExpressionGraph&) const = default;
};

ExpressionGraph build_graph(const Ast& ast, const EncoderConfig& config = {});

// Rewrites every Add/Mul with children c0..cn as
// T(T(...T(c(n-1), cn)..., c1), c0), leaving other nodes untouched.
Ast binarize(const Ast& ast);

// Rebuilds the Ast a graph was built from, following child_order. Useful
// after reordering commutative operands.
Ast to_ast(const ExpressionGraph& graph);

}  // namespace mexcode
