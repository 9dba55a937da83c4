#pragma once

// Structural code strings.
//
// A code is the upper-triangular adjacency matrix of the canonically ordered
// expression graph, read row by row (n(n-1)/2 bits for n vertices), followed
// by the emitted vertex labels with no separators:
//
//   x^2+y   ->   0010010011SymNumSymPowAdd
//
// Labels come from a closed alphabet (Sym, Num, operator names, and the
// preserved forms Sym:<name> / Num:<numeral>), so a code splits back into
// its parts without delimiters.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mexcode/canonical.hpp"
#include "mexcode/config.hpp"
#include "mexcode/graph.hpp"
#include "mexcode/parser.hpp"

namespace mexcode {

struct CanonicalCode {
  std::string bits;
  std::vector<std::string> labels;

  std::size_t vertex_count() const { return labels.size(); }
  std::string code() const;

  bool operator==(const CanonicalCode&) const = default;
};

// Everything the pipeline produced on the way to a code.
struct Encoding {
  Ast ast;                   // as parsed, or canonically binarized
  ExpressionGraph graph;     // built from `ast`, before any reordering
  CanonicalGraph canonical;
  CanonicalCode code;
};

CanonicalCode emit_code(const CanonicalGraph& canonical);

Encoding encode_ast(const Ast& ast, const EncoderConfig& config = {});
Encoding encode_detailed(std::string_view expression,
                         const EncoderConfig& config = {});
CanonicalCode encode(std::string_view expression,
                     const EncoderConfig& config = {});

// Throws Error(MalformedCode) when the text is not bits followed by a label
// sequence of matching length.
CanonicalCode parse_code(std::string_view code);

// Normalized edit distance: Levenshtein(a, b) / max(|a|, |b|) over code text.
// Kept as an exact ratio so rankings never depend on rounding.
struct CodeDistance {
  std::size_t edits = 0;
  std::size_t length = 0;

  double value() const {
    return length == 0 ? 0.0 : static_cast<double>(edits) / static_cast<double>(length);
  }
};

std::strong_ordering operator<=>(const CodeDistance& a, const CodeDistance& b);
bool operator==(const CodeDistance& a, const CodeDistance& b);

std::size_t levenshtein(std::string_view a, std::string_view b);
CodeDistance code_distance(std::string_view a, std::string_view b);
CodeDistance code_distance(const CanonicalCode& a, const CanonicalCode& b);

}  // namespace mexcode
