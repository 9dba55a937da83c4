#include "mexcode/index.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mexcode/error.hpp"

namespace mexcode {

using nlohmann::json;

namespace {

CorpusEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("record is not an object");
  CorpusEntry entry;
  entry.id = j.at("id").get<std::string>();
  entry.expression = j.at("expression").get<std::string>();
  if (auto it = j.find("metadata"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw std::runtime_error("metadata is not an object");
    for (const auto& [key, value] : it->items()) {
      entry.metadata.emplace(key, value.get<std::string>());
    }
  }
  return entry;
}

json entry_to_json(const CorpusEntry& entry) {
  json metadata = json::object();
  for (const auto& [key, value] : entry.metadata) metadata[key] = value;
  return json{{"id", entry.id}, {"expression", entry.expression}, {"metadata", metadata}};
}

json config_to_json(const EncoderConfig& config) {
  return json{{"mode", std::string(to_string(config.mode))},
              {"tie_break", std::string(to_string(config.tie_break))},
              {"preserve_symbols", config.preserve_symbols},
              {"preserve_numbers", config.preserve_numbers},
              {"preserve_exponents", config.preserve_exponents}};
}

std::string join_list(const std::set<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

// Route through the config text parser so the same validation applies.
EncoderConfig config_from_json(const json& j) {
  std::string text;
  text += "mode = " + j.at("mode").get<std::string>() + "\n";
  text += "tie_break = " + j.at("tie_break").get<std::string>() + "\n";
  for (const char* key : {"preserve_symbols", "preserve_numbers", "preserve_exponents"}) {
    text += std::string(key) + " = " +
            join_list(j.at(key).get<std::set<std::string>>()) + "\n";
  }
  return parse_config(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(entry_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(ErrorKind::EntryParseError,
                  "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open corpus '" + path + "'");
  return read_corpus(in);
}

std::string format_corpus_line(const CorpusEntry& entry) {
  return entry_to_json(entry).dump();
}

CorpusIndex CorpusIndex::build(const std::vector<CorpusEntry>& corpus,
                               const EncoderConfig& config) {
  CorpusIndex index;
  index.config_ = config;
  for (const auto& entry : corpus) {
    if (entry.id.empty()) {
      throw Error(ErrorKind::DuplicateId, "entry id must be non-empty");
    }
    if (!index.entries_.emplace(entry.id, entry).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate id '" + entry.id + "'");
    }
  }
  std::vector<std::string> failures;
  for (const auto& [id, entry] : index.entries_) {
    try {
      index.by_code_[encode(entry.expression, config).code()].insert(id);
    } catch (const Error& e) {
      failures.push_back(id + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    std::string message = std::to_string(failures.size()) + " entries failed to encode";
    for (const auto& f : failures) message += "\n  " + f;
    throw Error(ErrorKind::EntryParseError, message);
  }
  return index;
}

std::vector<QueryHit> CorpusIndex::query(std::string_view expression,
                                         std::size_t k) const {
  const std::string code = encode(expression, config_).code();
  std::vector<QueryHit> hits;
  if (auto it = by_code_.find(code); it != by_code_.end()) {
    for (const auto& id : it->second) {
      if (hits.size() == k) return hits;
      hits.push_back(QueryHit{id, CodeDistance{0, code.size()}});
    }
  }
  std::vector<QueryHit> rest;
  for (const auto& [other, ids] : by_code_) {
    if (other == code) continue;
    const CodeDistance d = code_distance(code, other);
    for (const auto& id : ids) rest.push_back(QueryHit{id, d});
  }
  std::sort(rest.begin(), rest.end(), [](const QueryHit& a, const QueryHit& b) {
    if (auto c = a.distance <=> b.distance; c != 0) return c < 0;
    return a.id < b.id;
  });
  for (auto& hit : rest) {
    if (hits.size() == k) break;
    hits.push_back(std::move(hit));
  }
  return hits;
}

void CorpusIndex::require_config(const EncoderConfig& config) const {
  if (config != config_) {
    throw Error(ErrorKind::ConfigMismatch,
                "query config differs from the config the index was built with");
  }
}

std::string CorpusIndex::to_json() const {
  json entries = json::array();
  for (const auto& [id, entry] : entries_) entries.push_back(entry_to_json(entry));
  json by_code = json::object();
  for (const auto& [code, ids] : by_code_) by_code[code] = ids;
  json doc{{"format", std::string(kIndexFormat)},
           {"config", config_to_json(config_)},
           {"entries", entries},
           {"by_code", by_code}};
  return doc.dump(2) + "\n";
}

CorpusIndex CorpusIndex::from_json(std::string_view text) {
  CorpusIndex index;
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kIndexFormat) {
      throw Error(ErrorKind::MalformedIndex,
                  "unsupported format '" + doc.at("format").get<std::string>() + "'");
    }
    index.config_ = config_from_json(doc.at("config"));
    for (const auto& j : doc.at("entries")) {
      CorpusEntry entry = entry_from_json(j);
      const std::string id = entry.id;
      if (!index.entries_.emplace(id, std::move(entry)).second) {
        throw Error(ErrorKind::MalformedIndex, "duplicate id '" + id + "'");
      }
    }
    for (const auto& [code, ids] : doc.at("by_code").items()) {
      index.by_code_[code] = ids.get<std::set<std::string>>();
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedIndex) throw;
    throw Error(ErrorKind::MalformedIndex, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::MalformedIndex, e.what());
  }

  // The stored grouping must be exactly what this build would produce.
  const CorpusIndex rebuilt = [&] {
    std::vector<CorpusEntry> corpus;
    for (const auto& [id, entry] : index.entries_) corpus.push_back(entry);
    try {
      return build(corpus, index.config_);
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedIndex, e.what());
    }
  }();
  if (rebuilt.by_code_ != index.by_code_) {
    throw Error(ErrorKind::MalformedIndex,
                "by_code does not match the entries under the stored config");
  }
  return index;
}

void CorpusIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << to_json();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

CorpusIndex CorpusIndex::load(const std::string& path) {
  return from_json(read_file(path));
}

}  // namespace mexcode
