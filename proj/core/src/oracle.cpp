#include "mexcode/oracle.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

#include "mexcode/encode.hpp"
#include "mexcode/error.hpp"

namespace mexcode {

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency(const ExpressionGraph& g) {
  Matrix m(g.size(), std::vector<char>(g.size(), 0));
  for (const auto& [i, j] : g.edges()) m[i][j] = m[j][i] = 1;
  return m;
}

std::vector<std::size_t> degrees(const Matrix& m) {
  std::vector<std::size_t> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i] = static_cast<std::size_t>(std::count(m[i].begin(), m[i].end(), 1));
  }
  return out;
}

std::vector<std::string> emitted_labels(const ExpressionGraph& g) {
  std::vector<std::string> out;
  out.reserve(g.size());
  for (const auto& v : g.vertices) out.push_back(v.emitted());
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const ExpressionGraph& a, const ExpressionGraph& b)
      : adj_a_(adjacency(a)), adj_b_(adjacency(b)),
        deg_a_(degrees(adj_a_)), deg_b_(degrees(adj_b_)),
        lab_a_(emitted_labels(a)), lab_b_(emitted_labels(b)),
        map_(a.size()), used_(b.size(), false) {
    // Breadth-first order so every vertex after the first has a mapped
    // neighbour to prune against.
    std::vector<bool> queued(a.size(), false);
    for (std::size_t start = 0; start < a.size(); ++start) {
      if (queued[start]) continue;
      queued[start] = true;
      order_.push_back(start);
      for (std::size_t k = order_.size() - 1; k < order_.size(); ++k) {
        for (std::size_t w = 0; w < a.size(); ++w) {
          if (adj_a_[order_[k]][w] && !queued[w]) {
            queued[w] = true;
            order_.push_back(w);
          }
        }
      }
    }
  }

  bool run() { return extend(0); }
  std::size_t nodes() const { return nodes_; }
  const std::vector<std::size_t>& mapping() const { return map_; }

 private:
  bool extend(std::size_t k) {
    if (k == order_.size()) return true;
    const std::size_t u = order_[k];
    for (std::size_t w = 0; w < used_.size(); ++w) {
      if (used_[w] || lab_b_[w] != lab_a_[u] || deg_b_[w] != deg_a_[u]) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < k && consistent; ++j) {
        const std::size_t prior = order_[j];
        consistent = adj_a_[u][prior] == adj_b_[w][map_[prior]];
      }
      if (!consistent) continue;
      ++nodes_;
      map_[u] = w;
      used_[w] = true;
      if (extend(k + 1)) return true;
      used_[w] = false;
    }
    return false;
  }

  Matrix adj_a_, adj_b_;
  std::vector<std::size_t> deg_a_, deg_b_;
  std::vector<std::string> lab_a_, lab_b_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::size_t nodes_ = 0;
};

}  // namespace

IsoVerdict iso_oracle(const ExpressionGraph& a, const ExpressionGraph& b,
                      std::size_t limit) {
  if (a.size() > limit || b.size() > limit) {
    throw Error(ErrorKind::TooLarge,
                "graphs of " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()) + " vertices exceed the limit of " +
                    std::to_string(limit));
  }
  IsoVerdict verdict;
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return verdict;

  auto profile = [](const ExpressionGraph& g) {
    const auto deg = degrees(adjacency(g));
    std::vector<std::pair<std::string, std::size_t>> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.emplace_back(g.vertices[i].emitted(), deg[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (profile(a) != profile(b)) return verdict;

  IsoSearch search(a, b);
  verdict.isomorphic = search.run();
  verdict.nodes_explored = search.nodes();
  if (verdict.isomorphic) verdict.witness = search.mapping();
  return verdict;
}

bool is_isomorphism(const ExpressionGraph& a, const ExpressionGraph& b,
                    const std::vector<std::size_t>& witness) {
  if (a.size() != b.size() || witness.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (witness[i] >= b.size() || hit[witness[i]]) return false;
    hit[witness[i]] = true;
    if (a.vertices[i].emitted() != b.vertices[witness[i]].emitted()) return false;
  }
  const auto edges_b = b.edges();
  const auto edges_a = a.edges();
  if (edges_a.size() != edges_b.size()) return false;
  for (const auto& [i, j] : edges_a) {
    const Edge mapped = std::minmax(witness[i], witness[j]);
    if (!std::binary_search(edges_b.begin(), edges_b.end(), mapped)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generator

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const std::vector<std::string>& symbol_alphabet() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (char c : std::string_view("xyzwuvabcdfghkmnpqrstjloeiABCDEFGHIJKLMNOPQRSTUVWXYZ")) {
      out.emplace_back(1, c);
    }
    return out;
  }();
  return names;
}

namespace {

class ExprGenerator {
 public:
  ExprGenerator(std::uint64_t seed, int symbol_pool)
      : rng_(seed),
        pool_(static_cast<std::size_t>(
            std::clamp<int>(symbol_pool, 1, static_cast<int>(symbol_alphabet().size())))) {}

  Ast root(int depth) { return depth <= 1 ? leaf() : op(depth); }

 private:
  Ast node(int depth) {
    if (depth <= 1 || rng_.below(3) == 0) return leaf();
    return op(depth);
  }

  Ast op(int depth) {
    switch (rng_.below(11)) {
      case 0: return Ast::add(operands(depth));
      case 1: return Ast::mul(operands(depth));
      case 2: return Ast::div(node(depth - 1), node(depth - 1));
      case 3: return Ast::pow(node(depth - 1), exponent());
      case 4: return Ast::neg(node(depth - 1));
      case 5: return Ast::func("sin", node(depth - 1));
      case 6: return Ast::func("cos", node(depth - 1));
      case 7: return Ast::func("tan", node(depth - 1));
      case 8: return Ast::func("log", node(depth - 1));
      case 9: return Ast::func("exp", node(depth - 1));
      default: return Ast::func("sqrt", node(depth - 1));
    }
  }

  std::vector<Ast> operands(int depth) {
    std::vector<Ast> out;
    const std::size_t arity = 2 + rng_.below(2);
    for (std::size_t i = 0; i < arity; ++i) out.push_back(node(depth - 1));
    return out;
  }

  Ast symbol() { return Ast::sym(symbol_alphabet()[rng_.below(pool_)]); }

  Ast leaf() {
    if (rng_.below(3) < 2) return symbol();
    return Ast::num(std::to_string(1 + rng_.below(9)));
  }

  Ast exponent() {
    if (rng_.below(4) < 3) return Ast::num(std::to_string(2 + rng_.below(3)));
    return symbol();
  }

  Rng rng_;
  std::size_t pool_;
};

void collect_symbols(const Ast& ast, std::vector<std::string>& out) {
  if (ast.kind() == Ast::Kind::Sym) {
    if (std::find(out.begin(), out.end(), ast.text()) == out.end()) {
      out.push_back(ast.text());
    }
    return;
  }
  for (const auto& child : ast.children()) collect_symbols(child, out);
}

Ast rebuild_with(const Ast& ast, const std::map<std::string, std::string>& names,
                 Rng* shuffle) {
  switch (ast.kind()) {
    case Ast::Kind::Sym: {
      auto it = names.find(ast.text());
      return Ast::sym(it == names.end() ? ast.text() : it->second);
    }
    case Ast::Kind::Num: return ast;
    default: break;
  }
  std::vector<Ast> kids;
  for (const auto& child : ast.children()) kids.push_back(rebuild_with(child, names, shuffle));
  switch (ast.kind()) {
    case Ast::Kind::Add:
    case Ast::Kind::Mul:
      if (shuffle != nullptr) {
        for (std::size_t i = kids.size(); i > 1; --i) {
          std::swap(kids[i - 1], kids[shuffle->below(i)]);
        }
      }
      return Ast::nested(ast.kind(), std::move(kids));
    case Ast::Kind::Neg: return Ast::neg(std::move(kids[0]));
    case Ast::Kind::Func: return Ast::func(ast.text(), std::move(kids[0]));
    case Ast::Kind::Pow: return Ast::pow(std::move(kids[0]), std::move(kids[1]));
    case Ast::Kind::Div: return Ast::div(std::move(kids[0]), std::move(kids[1]));
    default: break;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Ast gen_random_ast(std::uint64_t seed, int max_depth, int symbol_pool) {
  if (max_depth < 1 || symbol_pool < 1) {
    throw std::invalid_argument("max_depth and symbol_pool must be >= 1");
  }
  ExprGenerator gen(seed, symbol_pool);
  while (true) {
    Ast ast = gen.root(max_depth);
    if (max_depth > 4 || build_graph(ast).size() <= kDefaultVertexLimit) return ast;
  }
}

std::string gen_random_expr(std::uint64_t seed, int max_depth, int symbol_pool) {
  return unparse(gen_random_ast(seed, max_depth, symbol_pool));
}

Ast rename_symbols(const Ast& ast, std::uint64_t seed,
                   const std::set<std::string>& fixed) {
  std::vector<std::string> used;
  collect_symbols(ast, used);
  std::vector<std::string> targets;
  for (const auto& name : symbol_alphabet()) {
    if (!fixed.contains(name)) targets.push_back(name);
  }
  Rng rng(seed);
  for (std::size_t i = targets.size(); i > 1; --i) {
    std::swap(targets[i - 1], targets[rng.below(i)]);
  }
  std::map<std::string, std::string> names;
  std::size_t next = 0;
  for (const auto& name : used) {
    if (fixed.contains(name)) continue;
    if (next == targets.size()) {
      throw std::invalid_argument("not enough fresh names for renaming");
    }
    names.emplace(name, targets[next++]);
  }
  return rebuild_with(ast, names, nullptr);
}

Ast shuffle_commutative(const Ast& ast, std::uint64_t seed) {
  Rng rng(seed);
  return rebuild_with(ast, {}, &rng);
}

Ast make_twin(const Ast& ast, std::uint64_t seed, const std::set<std::string>& fixed) {
  Rng rng(seed);
  const std::uint64_t rename_seed = rng.next();
  return shuffle_commutative(rename_symbols(ast, rename_seed, fixed), rng.next());
}

// ---------------------------------------------------------------------------
// Evaluation

EvalReport& EvalReport::operator+=(const EvalReport& other) {
  pairs_tested += other.pairs_tested;
  false_equal += other.false_equal;
  missed_equal += other.missed_equal;
  twin_pairs += other.twin_pairs;
  twin_missed_equal += other.twin_missed_equal;
  independent_isomorphic += other.independent_isomorphic;
  expressions += other.expressions;
  expressions_with_ties += other.expressions_with_ties;
  return *this;
}

namespace {

constexpr int kEvalDepth = 4;
constexpr int kEvalPool = 4;

EvalReport run_trial(std::size_t trial, std::uint64_t seed, const EncoderConfig& config) {
  Rng rng(seed ^ (0xD1B54A32D192ED03ULL * (trial + 1)));
  const Ast first = gen_random_ast(rng.next(), kEvalDepth, kEvalPool);
  const Ast twin = make_twin(first, rng.next(), config.preserve_symbols);
  const Ast other = gen_random_ast(rng.next(), kEvalDepth, kEvalPool);

  // Round-trip through text so the parser is part of what is evaluated.
  const Encoding a = encode_detailed(unparse(first), config);
  const Encoding t = encode_detailed(unparse(twin), config);
  const Encoding o = encode_detailed(unparse(other), config);

  EvalReport report;
  report.expressions = 3;
  for (const Encoding* e : {&a, &t, &o}) {
    if (e->canonical.tie_break_events > 0) ++report.expressions_with_ties;
  }

  const auto check = [&](const Encoding& x, const Encoding& y, bool is_twin) {
    const std::size_t limit = std::max({kDefaultVertexLimit, x.graph.size(), y.graph.size()});
    const bool iso = iso_oracle(x.graph, y.graph, limit).isomorphic;
    const bool equal = x.code == y.code;
    ++report.pairs_tested;
    if (equal && !iso) ++report.false_equal;
    if (!equal && iso) {
      ++report.missed_equal;
      if (is_twin && x.canonical.tie_break_events == 0 &&
          y.canonical.tie_break_events == 0) {
        ++report.twin_missed_equal;
      }
    }
    if (!is_twin && iso) ++report.independent_isomorphic;
  };
  check(a, t, true);
  check(a, o, false);
  ++report.twin_pairs;
  return report;
}

}  // namespace

EvalReport evaluate(std::size_t n_pairs, std::uint64_t seed,
                    const EncoderConfig& config, unsigned threads) {
  if (n_pairs == 0) throw std::invalid_argument("n_pairs must be >= 1");
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n_pairs));

  std::vector<EvalReport> partial(threads);
  std::vector<std::exception_ptr> failures(threads);
  const auto work = [&](unsigned worker) {
    try {
      for (std::size_t trial = worker; trial < n_pairs; trial += threads) {
        partial[worker] += run_trial(trial, seed, config);
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  EvalReport total;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace mexcode
