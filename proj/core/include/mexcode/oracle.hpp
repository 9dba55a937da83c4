#pragma once

// Ground truth for the encoder: exact labeled-graph isomorphism on small
// graphs, a seeded random expression generator, and a harness that counts how
// often code equality disagrees with the exact answer.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mexcode/config.hpp"
#include "mexcode/graph.hpp"
#include "mexcode/parser.hpp"

namespace mexcode {

inline constexpr std::size_t kDefaultVertexLimit = 12;

struct IsoVerdict {
  bool isomorphic = false;
  // witness[i] is the vertex of the second graph matched to vertex i of the
  // first. Present iff isomorphic.
  std::optional<std::vector<std::size_t>> witness;
  std::size_t nodes_explored = 0;
};

// Backtracking search over bijections that preserve emitted labels and
// degrees. Exact. Throws Error(TooLarge) if either graph exceeds `limit`.
IsoVerdict iso_oracle(const ExpressionGraph& a, const ExpressionGraph& b,
                      std::size_t limit = kDefaultVertexLimit);

// True when `witness` maps a onto b preserving emitted labels and edges.
bool is_isomorphism(const ExpressionGraph& a, const ExpressionGraph& b,
                    const std::vector<std::size_t>& witness);

// SplitMix64. Deterministic on every platform, unlike the distributions in
// <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform-ish draw in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

// Symbol names used by the generator, in pool order.
const std::vector<std::string>& symbol_alphabet();

// Random expression over the full operator set. Leaves are drawn from the
// first `symbol_pool` names of symbol_alphabet() and the integers 1..9. With
// max_depth <= 4 the graph is kept to at most kDefaultVertexLimit vertices by
// redrawing.
Ast gen_random_ast(std::uint64_t seed, int max_depth, int symbol_pool);
std::string gen_random_expr(std::uint64_t seed, int max_depth, int symbol_pool);

// Bijective renaming of every symbol not in `fixed` onto fresh names drawn
// from symbol_alphabet() (excluding `fixed`).
Ast rename_symbols(const Ast& ast, std::uint64_t seed,
                   const std::set<std::string>& fixed = {});
// Random permutation of the operands of every Add and Mul.
Ast shuffle_commutative(const Ast& ast, std::uint64_t seed);
// rename_symbols followed by shuffle_commutative.
Ast make_twin(const Ast& ast, std::uint64_t seed,
              const std::set<std::string>& fixed = {});

struct EvalReport {
  std::size_t pairs_tested = 0;
  // Equal codes, non-isomorphic graphs.
  std::size_t false_equal = 0;
  // Isomorphic graphs, unequal codes (twins and independent pairs).
  std::size_t missed_equal = 0;
  std::size_t twin_pairs = 0;
  // Twins with unequal codes although neither side needed a tie-break.
  std::size_t twin_missed_equal = 0;
  std::size_t independent_isomorphic = 0;
  std::size_t expressions = 0;
  std::size_t expressions_with_ties = 0;

  double tie_break_rate() const {
    return expressions == 0 ? 0.0
                            : static_cast<double>(expressions_with_ties) /
                                  static_cast<double>(expressions);
  }

  EvalReport& operator+=(const EvalReport& other);
  bool operator==(const EvalReport&) const = default;
};

// For each trial: a random expression, its twin, and an independent draw;
// code equality on (expr, twin) and (expr, other) is checked against
// iso_oracle. Trials are independent; `threads` > 1 splits them across
// worker threads with an order-independent sum. n_pairs must be >= 1.
EvalReport evaluate(std::size_t n_pairs, std::uint64_t seed,
                    const EncoderConfig& config = {}, unsigned threads = 1);

}  // namespace mexcode
