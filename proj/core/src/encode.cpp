#include "mexcode/encode.hpp"

#include <algorithm>
#include <array>

#include "mexcode/error.hpp"

namespace mexcode {

std::string CanonicalCode::code() const {
  std::string out = bits;
  for (const auto& label : labels) out += label;
  return out;
}

CanonicalCode emit_code(const CanonicalGraph& canonical) {
  const ExpressionGraph& g = canonical.graph;
  const std::size_t n = g.size();
  CanonicalCode out;
  out.bits.assign(n * (n - (n > 0 ? 1 : 0)) / 2, '0');
  // Row i starts after rows 0..i-1, which hold (n-1) + ... + (n-i) bits.
  const auto offset = [n](std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  for (const auto& [i, j] : g.edges()) out.bits[offset(i, j)] = '1';
  out.labels.reserve(n);
  for (const auto& v : g.vertices) out.labels.push_back(v.emitted());
  return out;
}

Encoding encode_ast(const Ast& ast, const EncoderConfig& config) {
  if (config.mode == TreeMode::Nary) {
    ExpressionGraph graph = build_graph(ast, config);
    CanonicalGraph canonical = order_vertices(sort_children(graph, config.tie_break));
    CanonicalCode code = emit_code(canonical);
    return Encoding{ast, std::move(graph), std::move(canonical), std::move(code)};
  }
  // Binary mode: fix the operand order on the n-ary form first, so the
  // chain shape produced by binarize does not depend on input order.
  const SortedGraph nary =
      sort_children(build_graph(ast, config), config.tie_break);
  Ast binary = binarize(to_ast(nary.graph));
  ExpressionGraph graph = build_graph(binary, config);
  SortedGraph sorted = sort_children(graph, config.tie_break);
  CanonicalGraph canonical =
      order_vertices(sorted.graph, nary.tie_break_events + sorted.tie_break_events);
  CanonicalCode code = emit_code(canonical);
  return Encoding{std::move(binary), std::move(graph), std::move(canonical),
                  std::move(code)};
}

Encoding encode_detailed(std::string_view expression, const EncoderConfig& config) {
  return encode_ast(parse(expression), config);
}

CanonicalCode encode(std::string_view expression, const EncoderConfig& config) {
  return encode_detailed(expression, config).code;
}

namespace {

constexpr std::array<std::string_view, 11> kOperatorLabels = {
    "Pow", "Mul", "Div", "Add", "Neg", "Sin", "Cos", "Tan", "Log", "Exp", "Sqrt"};

std::size_t numeral_length(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == 0) return 0;
  if (i + 1 < text.size() && text[i] == '.' && text[i + 1] >= '0' &&
      text[i + 1] <= '9') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  }
  return i;
}

// Length of the label at the front of `text`, or 0 if none matches.
std::size_t label_length(std::string_view text) {
  if (text.starts_with("Sym:")) {
    const std::size_t n = match_identifier(text.substr(4));
    return n == 0 ? 0 : 4 + n;
  }
  if (text.starts_with("Num:")) {
    const std::size_t n = numeral_length(text.substr(4));
    return n == 0 ? 0 : 4 + n;
  }
  if (text.starts_with("Sym") || text.starts_with("Num")) return 3;
  for (auto op : kOperatorLabels) {
    if (text.starts_with(op)) return op.size();
  }
  return 0;
}

}  // namespace

CanonicalCode parse_code(std::string_view code) {
  CanonicalCode out;
  const std::size_t split = std::min(code.find_first_not_of("01"), code.size());
  out.bits = std::string(code.substr(0, split));
  std::string_view rest = code.substr(split);
  while (!rest.empty()) {
    const std::size_t n = label_length(rest);
    if (n == 0) {
      throw Error(ErrorKind::MalformedCode,
                  "unrecognized label at offset " +
                      std::to_string(code.size() - rest.size()));
    }
    out.labels.emplace_back(rest.substr(0, n));
    rest.remove_prefix(n);
  }
  const std::size_t vertices = out.labels.size();
  if (vertices == 0) throw Error(ErrorKind::MalformedCode, "code has no labels");
  const std::size_t expected = vertices * (vertices - 1) / 2;
  if (out.bits.size() != expected) {
    throw Error(ErrorKind::MalformedCode,
                std::to_string(vertices) + " labels need " +
                    std::to_string(expected) + " bits, got " +
                    std::to_string(out.bits.size()));
  }
  return out;
}

std::strong_ordering operator<=>(const CodeDistance& a, const CodeDistance& b) {
  // Empty length means distance 0 (0/1).
  const std::size_t la = std::max<std::size_t>(a.length, 1);
  const std::size_t lb = std::max<std::size_t>(b.length, 1);
  return a.edits * lb <=> b.edits * la;
}

bool operator==(const CodeDistance& a, const CodeDistance& b) {
  return (a <=> b) == 0;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

CodeDistance code_distance(std::string_view a, std::string_view b) {
  return CodeDistance{levenshtein(a, b), std::max(a.size(), b.size())};
}

CodeDistance code_distance(const CanonicalCode& a, const CanonicalCode& b) {
  return code_distance(a.code(), b.code());
}

}  // namespace mexcode
