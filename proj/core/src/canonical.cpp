#include "mexcode/canonical.hpp"

#include <algorithm>
#include <tuple>

#include "mexcode/error.hpp"

namespace mexcode {

std::strong_ordering operator<=>(const StructuralKey& a, const StructuralKey& b) {
  if (auto c = a.class_rank <=> b.class_rank; c != 0) return c;
  if (auto c = a.op_rank <=> b.op_rank; c != 0) return c;
  if (auto c = a.leaf_label.compare(b.leaf_label) <=> 0; c != 0) return c;
  const std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
  }
  return a.children.size() <=> b.children.size();
}

bool operator==(const StructuralKey& a, const StructuralKey& b) {
  return (a <=> b) == 0;
}

namespace {

StructuralKey leaf_key(const VertexLabel& label) {
  return StructuralKey{static_cast<int>(label.cls), -1, label.emitted(), {}};
}

// (operator rank, operand slot) of one place a symbol occurs. The slot is 0
// under commutative operators, where position carries no meaning.
using Incidence = std::pair<int, int>;
using Signature = std::vector<std::vector<Incidence>>;

class ChildSorter {
 public:
  ChildSorter(const ExpressionGraph& graph, TieBreak policy)
      : graph_(graph), policy_(policy), keys_(graph.size()),
        incidences_(graph.size()) {
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      const auto& kids = graph_.child_order[v];
      const OpKind op = graph_.vertices[v].op;
      for (std::size_t slot = 0; slot < kids.size(); ++slot) {
        const std::size_t c = kids[slot];
        if (graph_.vertices[c].cls != VertexClass::Sym) continue;
        incidences_[c].push_back(
            {v, {op_rank(op), is_commutative(op) ? 0 : static_cast<int>(slot)}});
      }
    }
  }

  SortedGraph run() {
    visit(graph_.root);
    return SortedGraph{std::move(graph_), events_};
  }

 private:
  struct Rank {
    const StructuralKey* key;
    Signature signature;
    std::vector<std::string> names;
  };

  void visit(std::size_t v) {
    const VertexLabel& label = graph_.vertices[v];
    if (label.is_leaf()) {
      keys_[v] = leaf_key(label);
      return;
    }
    for (std::size_t c : graph_.child_order[v]) visit(c);
    if (is_commutative(label.op)) sort_operands(v);

    StructuralKey key{static_cast<int>(VertexClass::Op), op_rank(label.op), {}, {}};
    for (std::size_t c : graph_.child_order[v]) key.children.push_back(keys_[c]);
    keys_[v] = std::move(key);
  }

  void sort_operands(std::size_t v) {
    auto& kids = graph_.child_order[v];
    const int parent_rank = op_rank(graph_.vertices[v].op);

    std::vector<std::pair<std::size_t, Rank>> ranked;
    ranked.reserve(kids.size());
    for (std::size_t c : kids) {
      ranked.emplace_back(c, Rank{&keys_[c], signature(c, parent_rank), names(c)});
    }
    const auto structural = [](const Rank& a, const Rank& b) {
      if (auto cmp = *a.key <=> *b.key; cmp != 0) return cmp < 0;
      return a.signature < b.signature;
    };
    std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      if (structural(a.second, b.second)) return true;
      if (structural(b.second, a.second)) return false;
      return a.second.names < b.second.names;
    });

    std::size_t ties = 0;
    for (std::size_t i = 1; i < ranked.size(); ++i) {
      const auto& prev = ranked[i - 1];
      const auto& cur = ranked[i];
      if (prev.first != cur.first && !structural(prev.second, cur.second)) ++ties;
    }
    if (ties > 0 && policy_ == TieBreak::Reject) {
      throw Error(ErrorKind::AmbiguousOrdering,
                  std::string(op_name(graph_.vertices[v].op)) +
                      " has operands that only alphabetical order can separate");
    }
    events_ += ties;
    for (std::size_t i = 0; i < ranked.size(); ++i) kids[i] = ranked[i].first;
  }

  // For each symbol reached from `c` (first visit, operand order), the
  // incidences of that symbol that lie outside the subtree.
  Signature signature(std::size_t c, int parent_rank) const {
    const VertexLabel& label = graph_.vertices[c];
    if (label.cls == VertexClass::Num) return {};
    if (label.cls == VertexClass::Sym) {
      std::vector<Incidence> rest;
      bool dropped = false;
      for (const auto& [parent, inc] : incidences_[c]) {
        if (!dropped && inc == Incidence{parent_rank, 0}) {
          dropped = true;
          continue;
        }
        rest.push_back(inc);
      }
      std::sort(rest.begin(), rest.end());
      return {std::move(rest)};
    }

    std::vector<bool> inside(graph_.size(), false);
    std::vector<std::size_t> symbols;
    collect(c, inside, symbols);
    Signature out;
    out.reserve(symbols.size());
    for (std::size_t s : symbols) {
      std::vector<Incidence> rest;
      for (const auto& [parent, inc] : incidences_[s]) {
        if (!inside[parent]) rest.push_back(inc);
      }
      std::sort(rest.begin(), rest.end());
      out.push_back(std::move(rest));
    }
    return out;
  }

  void collect(std::size_t v, std::vector<bool>& inside,
               std::vector<std::size_t>& symbols) const {
    const VertexLabel& label = graph_.vertices[v];
    if (label.cls == VertexClass::Sym) {
      if (std::find(symbols.begin(), symbols.end(), v) == symbols.end()) {
        symbols.push_back(v);
      }
      return;
    }
    if (label.cls == VertexClass::Num) return;
    inside[v] = true;
    for (std::size_t c : graph_.child_order[v]) collect(c, inside, symbols);
  }

  std::vector<std::string> names(std::size_t c) const {
    std::vector<std::string> out;
    append_names(c, out);
    return out;
  }

  void append_names(std::size_t v, std::vector<std::string>& out) const {
    if (graph_.vertices[v].is_leaf()) {
      out.push_back(graph_.vertices[v].detail);
      return;
    }
    for (std::size_t c : graph_.child_order[v]) append_names(c, out);
  }

  ExpressionGraph graph_;
  TieBreak policy_;
  std::vector<StructuralKey> keys_;
  std::vector<std::vector<std::pair<std::size_t, Incidence>>> incidences_;
  std::size_t events_ = 0;
};

void walk(const ExpressionGraph& graph, std::size_t v, std::vector<bool>& seen,
          std::vector<std::size_t>& leaves, std::vector<std::size_t>& ops) {
  if (graph.vertices[v].is_leaf()) {
    if (!seen[v]) {
      seen[v] = true;
      leaves.push_back(v);
    }
    return;
  }
  for (std::size_t c : graph.child_order[v]) walk(graph, c, seen, leaves, ops);
  ops.push_back(v);
}

}  // namespace

StructuralKey structural_key(const ExpressionGraph& graph, std::size_t vertex) {
  const VertexLabel& label = graph.vertices.at(vertex);
  if (label.is_leaf()) return leaf_key(label);
  StructuralKey key{static_cast<int>(VertexClass::Op), op_rank(label.op), {}, {}};
  for (std::size_t c : graph.child_order[vertex]) {
    key.children.push_back(structural_key(graph, c));
  }
  return key;
}

SortedGraph sort_children(const ExpressionGraph& graph, TieBreak policy) {
  return ChildSorter(graph, policy).run();
}

CanonicalGraph order_vertices(const ExpressionGraph& sorted,
                              std::size_t tie_break_events) {
  std::vector<bool> seen(sorted.size(), false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> ops;
  walk(sorted, sorted.root, seen, order, ops);
  order.insert(order.end(), ops.begin(), ops.end());

  std::vector<std::size_t> index_of(sorted.size());
  for (std::size_t i = 0; i < order.size(); ++i) index_of[order[i]] = i;

  CanonicalGraph out;
  out.tie_break_events = tie_break_events;
  out.source = order;
  out.graph.vertices.reserve(order.size());
  out.graph.child_order.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.graph.vertices.push_back(sorted.vertices[order[i]]);
    for (std::size_t c : sorted.child_order[order[i]]) {
      out.graph.child_order[i].push_back(index_of[c]);
    }
  }
  out.graph.root = index_of[sorted.root];
  return out;
}

CanonicalGraph order_vertices(const SortedGraph& sorted) {
  return order_vertices(sorted.graph, sorted.tie_break_events);
}

}  // namespace mexcode
