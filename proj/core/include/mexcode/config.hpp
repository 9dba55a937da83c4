#pragma once

// Encoder configuration and its text file format.
//
// The file is a flat list of `key = value` lines. Blank lines and lines whose
// first non-blank character is '#' are ignored. Keys:
//
//   mode                = nary | binary
//   tie_break           = alphabetical | reject
//   preserve_symbols    = comma-separated identifiers, e.g. R, C, rho
//   preserve_numbers    = comma-separated numerals, e.g. 3.14, 9.8
//   preserve_exponents  = comma-separated numerals, e.g. 2, 3
//
// Each key may appear at most once; unknown keys are rejected.

#include <istream>
#include <set>
#include <string>
#include <string_view>

namespace mexcode {

enum class TreeMode { Nary, Binary };
enum class TieBreak { Alphabetical, Reject };

std::string_view to_string(TreeMode mode);
std::string_view to_string(TieBreak policy);

struct EncoderConfig {
  TreeMode mode = TreeMode::Nary;
  TieBreak tie_break = TieBreak::Alphabetical;
  std::set<std::string> preserve_symbols;
  std::set<std::string> preserve_numbers;
  // Numerals kept verbatim only where they are the exponent of a Pow.
  std::set<std::string> preserve_exponents;

  bool operator==(const EncoderConfig&) const = default;
};

// Throws Error(InvalidConfig) on any grammar or value violation.
EncoderConfig parse_config(std::string_view text);
EncoderConfig load_config(const std::string& path);

// Canonical file text; parse_config(format_config(c)) == c.
std::string format_config(const EncoderConfig& config);

TreeMode parse_tree_mode(std::string_view text);
TieBreak parse_tie_break(std::string_view text);

}  // namespace mexcode
