#pragma once

// Code-keyed corpus index.
//
// Corpus files are JSON Lines: one object per line with a string "id", a
// string "expression" and an optional "metadata" object of string values.
// Blank lines are skipped.
//
// Index files are a single JSON document:
//
//   {
//     "format": "mexcode-index/1",
//     "config": {"mode": "nary", "tie_break": "alphabetical",
//                "preserve_symbols": [...], "preserve_numbers": [...],
//                "preserve_exponents": [...]},
//     "entries": [{"id": ..., "expression": ..., "metadata": {...}}, ...],
//     "by_code": {"<code>": ["<id>", ...], ...}
//   }
//
// Entries are sorted by id, id lists are sorted, and objects are written with
// sorted keys, so the same corpus and config always produce the same bytes.

#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mexcode/config.hpp"
#include "mexcode/encode.hpp"

namespace mexcode {

inline constexpr std::string_view kIndexFormat = "mexcode-index/1";

struct CorpusEntry {
  std::string id;
  std::string expression;
  std::map<std::string, std::string> metadata;

  bool operator==(const CorpusEntry&) const = default;
};

std::vector<CorpusEntry> read_corpus(std::istream& in);
std::vector<CorpusEntry> load_corpus(const std::string& path);
std::string format_corpus_line(const CorpusEntry& entry);

struct QueryHit {
  std::string id;
  CodeDistance distance;

  bool operator==(const QueryHit&) const = default;
};

class CorpusIndex {
 public:
  // Fails atomically: DuplicateId on the first repeated id, otherwise
  // EntryParseError listing every entry whose expression does not encode.
  static CorpusIndex build(const std::vector<CorpusEntry>& corpus,
                           const EncoderConfig& config = {});

  const EncoderConfig& config() const { return config_; }
  const std::map<std::string, CorpusEntry>& entries() const { return entries_; }
  const std::map<std::string, std::set<std::string>>& by_code() const {
    return by_code_;
  }
  std::size_t size() const { return entries_.size(); }

  // Exact matches first (distance 0, ascending id), then the rest by
  // ascending code distance and id; at most k hits.
  std::vector<QueryHit> query(std::string_view expression, std::size_t k) const;

  // Throws ConfigMismatch unless `config` equals the frozen config.
  void require_config(const EncoderConfig& config) const;

  std::string to_json() const;
  static CorpusIndex from_json(std::string_view text);

  void save(const std::string& path) const;
  static CorpusIndex load(const std::string& path);

 private:
  EncoderConfig config_;
  std::map<std::string, CorpusEntry> entries_;
  std::map<std::string, std::set<std::string>> by_code_;
};

}  // namespace mexcode
