#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mexcode/mexcode.hpp"

namespace mexcode::cli {

Environment Environment::from_process() {
  Environment env;
  if (const char* path = std::getenv("MEXCODE_CONFIG"); path != nullptr && *path != '\0') {
    env.config_path = path;
  }
  return env;
}

namespace {

struct ConfigFlags {
  std::string path;
  bool binary = false;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags, bool with_binary = true) {
  cmd->add_option("--config", flags.path,
                  "Encoder config file (default: $MEXCODE_CONFIG)");
  if (with_binary) {
    cmd->add_flag("--binary", flags.binary, "Binarize n-ary sums and products first");
  }
}

// Nullopt when neither --config nor MEXCODE_CONFIG names a file.
std::optional<EncoderConfig> explicit_config(const ConfigFlags& flags,
                                             const Environment& env) {
  if (!flags.path.empty()) return load_config(flags.path);
  if (env.config_path) return load_config(*env.config_path);
  return std::nullopt;
}

EncoderConfig resolve_config(const ConfigFlags& flags, const Environment& env) {
  EncoderConfig config = explicit_config(flags, env).value_or(EncoderConfig{});
  if (flags.binary) config.mode = TreeMode::Binary;
  return config;
}

std::string fixed6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string vertex_name(const VertexLabel& label) {
  return label.is_leaf() ? label.detail : std::string(op_name(label.op));
}

void print_verbose(const Encoding& enc, std::ostream& out) {
  const auto& g = enc.canonical.graph;
  out << "vertices:";
  for (const auto& v : g.vertices) out << ' ' << vertex_name(v);
  out << "\nadjacency:\n";
  std::size_t pos = 0;
  for (std::size_t row = 0; row + 1 < g.size(); ++row) {
    const std::size_t width = g.size() - row - 1;
    out << "  " << enc.code.bits.substr(pos, width) << '\n';
    pos += width;
  }
  out << "tie_break_events: " << enc.canonical.tie_break_events << '\n';
}

void print_graph(const char* name, const ExpressionGraph& g, std::ostream& out) {
  out << name << ':';
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << ' ' << i << ':' << vertex_name(g.vertices[i]);
  }
  out << '\n';
}

ExpressionGraph oracle_graph(const std::string& expression, const EncoderConfig& config) {
  Ast ast = parse(expression);
  if (config.mode == TreeMode::Binary) ast = binarize(ast);
  return build_graph(ast, config);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Environment& env) {
  CLI::App app{"Structural codes for mathematical expressions", "mexcode"};
  app.require_subcommand(1);

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Print the structural code of an expression");
  std::string encode_expr;
  bool verbose = false;
  bool from_stdin = false;
  ConfigFlags encode_flags;
  encode_cmd->add_option("expression", encode_expr, "Infix expression");
  encode_cmd->add_flag("--verbose", verbose, "Also print vertices, adjacency rows and tie-breaks");
  encode_cmd->add_flag("--stdin", from_stdin, "Encode one expression per input line");
  add_config_flags(encode_cmd, encode_flags);

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Compare the codes of two expressions");
  std::string cmp_a, cmp_b;
  ConfigFlags compare_flags;
  compare_cmd->add_option("first", cmp_a)->required();
  compare_cmd->add_option("second", cmp_b)->required();
  add_config_flags(compare_cmd, compare_flags);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact isomorphism test of two expression graphs");
  std::string iso_a, iso_b;
  std::size_t limit = kDefaultVertexLimit;
  ConfigFlags oracle_flags;
  oracle_cmd->add_option("first", iso_a)->required();
  oracle_cmd->add_option("second", iso_b)->required();
  oracle_cmd->add_option("--limit", limit, "Maximum vertices per graph")
      ->check(CLI::PositiveNumber);
  add_config_flags(oracle_cmd, oracle_flags);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Measure code equality against the oracle");
  std::size_t pairs = 0;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  ConfigFlags eval_flags;
  eval_cmd->add_option("--pairs", pairs, "Number of trials")->required()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", seed, "Random seed");
  eval_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  add_config_flags(eval_cmd, eval_flags);

  // index-build
  auto* build_cmd = app.add_subcommand("index-build", "Build an index file from a JSONL corpus");
  std::string corpus_path, index_out;
  ConfigFlags build_flags;
  build_cmd->add_option("corpus", corpus_path, "Corpus file (JSON Lines)")->required();
  build_cmd->add_option("-o,--output", index_out, "Index file to write")->required();
  add_config_flags(build_cmd, build_flags);

  // index-query
  auto* query_cmd = app.add_subcommand("index-query", "Rank index entries against an expression");
  std::string index_path, query_expr;
  std::size_t k = 10;
  ConfigFlags query_flags;
  query_cmd->add_option("index", index_path, "Index file")->required();
  query_cmd->add_option("expression", query_expr, "Query expression")->required();
  query_cmd->add_option("-k", k, "Maximum results")->check(CLI::PositiveNumber);
  add_config_flags(query_cmd, query_flags, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*encode_cmd && !from_stdin && encode_expr.empty()) {
      throw CLI::RequiredError("expression (or --stdin)");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun 'mexcode --help' for usage.\n";
    return kExitUsageError;
  }

  try {
    if (*encode_cmd) {
      const EncoderConfig config = resolve_config(encode_flags, env);
      if (!from_stdin) {
        const Encoding enc = encode_detailed(encode_expr, config);
        out << enc.code.code() << '\n';
        if (verbose) print_verbose(enc, out);
        return kExitOk;
      }
      int status = kExitOk;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
          out << encode(line, config).code() << '\n';
        } catch (const Error& e) {
          out << '\n';
          err << "line " << line_no << ": " << e.what() << '\n';
          status = kExitDomainError;
        }
      }
      return status;
    }

    if (*compare_cmd) {
      const EncoderConfig config = resolve_config(compare_flags, env);
      const CanonicalCode a = encode(cmp_a, config);
      const CanonicalCode b = encode(cmp_b, config);
      const CodeDistance d = code_distance(a, b);
      out << (a == b ? "EQUAL" : "DISTINCT") << '\n'
          << a.code() << '\n'
          << b.code() << '\n'
          << "distance: " << fixed6(d.value()) << " (" << d.edits << '/' << d.length
          << ")\n";
      return kExitOk;
    }

    if (*oracle_cmd) {
      const EncoderConfig config = resolve_config(oracle_flags, env);
      const ExpressionGraph a = oracle_graph(iso_a, config);
      const ExpressionGraph b = oracle_graph(iso_b, config);
      const IsoVerdict verdict = iso_oracle(a, b, limit);
      out << (verdict.isomorphic ? "ISOMORPHIC" : "NOT_ISOMORPHIC") << '\n';
      if (verdict.witness) {
        out << "witness:";
        for (std::size_t i = 0; i < verdict.witness->size(); ++i) {
          out << ' ' << i << "->" << (*verdict.witness)[i];
        }
        out << '\n';
      }
      out << "nodes_explored: " << verdict.nodes_explored << '\n';
      print_graph("first", a, out);
      print_graph("second", b, out);
      return kExitOk;
    }

    if (*eval_cmd) {
      const EncoderConfig config = resolve_config(eval_flags, env);
      const EvalReport r = evaluate(pairs, seed, config, threads);
      const auto line = [&out](const char* key, const std::string& value) {
        out << std::left << std::setw(24) << key << value << '\n';
      };
      line("pairs_tested", std::to_string(r.pairs_tested));
      line("false_equal", std::to_string(r.false_equal));
      line("missed_equal", std::to_string(r.missed_equal));
      line("twin_pairs", std::to_string(r.twin_pairs));
      line("twin_missed_equal", std::to_string(r.twin_missed_equal));
      line("independent_isomorphic", std::to_string(r.independent_isomorphic));
      line("expressions", std::to_string(r.expressions));
      line("expressions_with_ties", std::to_string(r.expressions_with_ties));
      line("tie_break_rate", fixed6(r.tie_break_rate()));
      return kExitOk;
    }

    if (*build_cmd) {
      const EncoderConfig config = resolve_config(build_flags, env);
      const CorpusIndex index = CorpusIndex::build(load_corpus(corpus_path), config);
      index.save(index_out);
      out << "indexed " << index.size() << " entries under " << index.by_code().size()
          << " codes\n";
      return kExitOk;
    }

    if (*query_cmd) {
      const CorpusIndex index = CorpusIndex::load(index_path);
      if (auto config = explicit_config(query_flags, env)) index.require_config(*config);
      for (const auto& hit : index.query(query_expr, k)) {
        out << hit.id << '\t' << fixed6(hit.distance.value()) << '\n';
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsageError;
}

}  // namespace mexcode::cli
