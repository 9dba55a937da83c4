#include "mexcode/config.hpp"

#include <fstream>
#include <sstream>

#include "mexcode/error.hpp"
#include "mexcode/parser.hpp"

namespace mexcode {

std::string_view to_string(TreeMode mode) {
  return mode == TreeMode::Nary ? "nary" : "binary";
}

std::string_view to_string(TieBreak policy) {
  return policy == TieBreak::Alphabetical ? "alphabetical" : "reject";
}

TreeMode parse_tree_mode(std::string_view text) {
  if (text == "nary") return TreeMode::Nary;
  if (text == "binary") return TreeMode::Binary;
  throw Error(ErrorKind::InvalidConfig,
              "mode must be 'nary' or 'binary', got '" + std::string(text) + "'");
}

TieBreak parse_tie_break(std::string_view text) {
  if (text == "alphabetical") return TieBreak::Alphabetical;
  if (text == "reject") return TieBreak::Reject;
  throw Error(ErrorKind::InvalidConfig,
              "tie_break must be 'alphabetical' or 'reject', got '" +
                  std::string(text) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::set<std::string> split_list(std::string_view value, std::string_view key,
                                 bool (*valid)(std::string_view)) {
  std::set<std::string> out;
  while (true) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) {
      if (!valid(item)) {
        throw Error(ErrorKind::InvalidConfig,
                    "invalid entry '" + std::string(item) + "' for " +
                        std::string(key));
      }
      out.emplace(item);
    }
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  return !s.empty() && match_identifier(s) == s.size() && !is_function_name(s);
}

bool valid_numeral(std::string_view s) { return is_numeral(s); }

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

}  // namespace

EncoderConfig parse_config(std::string_view text) {
  EncoderConfig config;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidConfig, where + "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::InvalidConfig, where + "duplicate key '" + key + "'");
    }
    if (key == "mode") {
      config.mode = parse_tree_mode(value);
    } else if (key == "tie_break") {
      config.tie_break = parse_tie_break(value);
    } else if (key == "preserve_symbols") {
      config.preserve_symbols = split_list(value, key, valid_identifier);
    } else if (key == "preserve_numbers") {
      config.preserve_numbers = split_list(value, key, valid_numeral);
    } else if (key == "preserve_exponents") {
      config.preserve_exponents = split_list(value, key, valid_numeral);
    } else {
      throw Error(ErrorKind::InvalidConfig, where + "unknown key '" + key + "'");
    }
  }
  return config;
}

EncoderConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const EncoderConfig& config) {
  std::ostringstream out;
  out << "mode = " << to_string(config.mode) << '\n'
      << "tie_break = " << to_string(config.tie_break) << '\n'
      << "preserve_symbols = " << join(config.preserve_symbols) << '\n'
      << "preserve_numbers = " << join(config.preserve_numbers) << '\n'
      << "preserve_exponents = " << join(config.preserve_exponents) << '\n';
  return out.str();
}

}  // namespace mexcode
