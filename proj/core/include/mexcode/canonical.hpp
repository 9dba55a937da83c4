#pragma once

// Consistent vertex ordering for expression graphs.
//
// Commutative operands (Add, Mul) are sorted by a name-free structural key:
// operator subtrees before symbols before numbers, operators by rank
// (Pow, Mul, Div, Add, Neg, Sin, Cos, Tan, Log, Exp, Sqrt), then recursively
// by operand keys. Equal keys fall back to the symbol-incidence signature
// and, as a last resort, to the alphabetical order of the names involved.
// Only the last resort depends on spelling; each use is counted.

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mexcode/config.hpp"
#include "mexcode/graph.hpp"

namespace mexcode {

struct StructuralKey {
  int class_rank = 0;  // Op = 0, Sym = 1, Num = 2
  int op_rank = -1;    // -1 for leaves
  // Emitted label of a leaf ("Sym", "Num", "Sym:R", ...); empty for Op.
  std::string leaf_label;
  std::vector<StructuralKey> children;
};

std::strong_ordering operator<=>(const StructuralKey& a, const StructuralKey& b);
bool operator==(const StructuralKey& a, const StructuralKey& b);

// Key of the subtree rooted at `vertex`, reading operands in child_order.
StructuralKey structural_key(const ExpressionGraph& graph, std::size_t vertex);

struct SortedGraph {
  ExpressionGraph graph;
  // Adjacent equal-ranked operand pairs that only the alphabetical
  // fallback could order.
  std::size_t tie_break_events = 0;
};

// Sorts operands of every Add/Mul vertex; other operators keep operand
// order. Throws Error(AmbiguousOrdering) under TieBreak::Reject when the
// alphabetical fallback would be needed.
SortedGraph sort_children(const ExpressionGraph& graph,
                          TieBreak policy = TieBreak::Alphabetical);

struct CanonicalGraph {
  // Vertices re-indexed: leaves in first-visit order of a depth-first walk,
  // then operators in post-order (root last).
  ExpressionGraph graph;
  std::size_t tie_break_events = 0;
  // source[i] is the index in the input graph of canonical vertex i.
  std::vector<std::size_t> source;
};

CanonicalGraph order_vertices(const ExpressionGraph& sorted,
                              std::size_t tie_break_events = 0);

CanonicalGraph order_vertices(const SortedGraph& sorted);

inline CanonicalGraph canonicalize(const ExpressionGraph& graph,
                                   TieBreak policy = TieBreak::Alphabetical) {
  return order_vertices(sort_children(graph, policy));
}

}  // namespace mexcode
