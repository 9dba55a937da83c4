#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace mexcode::cli {
namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& input = "",
               const Environment& env = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int status = run(args, in, out, err, env);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / "mexcode_cli_test") {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream(file) << content;
    return file.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

TEST(Cli, EncodeGolden) {
  const Result r = run_cli({"encode", "x^2+y"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out, "0010010011SymNumSymPowAdd\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, EncodeVerbose) {
  const Result r = run_cli({"encode", "--verbose", "(x+y)^2"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out,
            "0010010011SymSymNumAddPow\n"
            "vertices: x y 2 Add Pow\n"
            "adjacency:\n"
            "  0010\n"
            "  010\n"
            "  01\n"
            "  1\n"
            "tie_break_events: 1\n");
}

TEST(Cli, EncodeLeadingMinusNeedsSeparator) {
  const Result r = run_cli({"encode", "--", "-x+y"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out, run_cli({"encode", "y-x"}).out);
}

TEST(Cli, EncodeStdin) {
  const Result r = run_cli({"encode", "--stdin"}, "x^2+y\nx+\nsin(x)cos(x)\r\n");
  EXPECT_EQ(r.status, kExitDomainError);
  EXPECT_EQ(r.out, "0010010011SymNumSymPowAdd\n\n110011SymSinCosMul\n");
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, DomainErrorsGoToStderr) {
  const Result r = run_cli({"encode", "x+"});
  EXPECT_EQ(r.status, kExitDomainError);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
}

TEST(Cli, UsageErrors) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{}, {"frobnicate"}, {"encode"}, {"compare", "x"},
                                             {"eval"}, {"eval", "--pairs", "0"}, {"encode", "x", "--bogus"}}) {
    const Result r = run_cli(args);
    EXPECT_EQ(r.status, kExitUsageError) << (args.empty() ? "" : args[0]);
    EXPECT_EQ(r.out, "");
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, Help) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("index-query"), std::string::npos);
}

TEST(Cli, Compare) {
  const Result eq = run_cli({"compare", "a^2+b", "x+y^2"});
  EXPECT_EQ(eq.status, kExitOk);
  EXPECT_EQ(eq.out,
            "EQUAL\n0010010011SymNumSymPowAdd\n0010010011SymNumSymPowAdd\n"
            "distance: 0.000000 (0/25)\n");
  const Result ne = run_cli({"compare", "x", "2"});
  EXPECT_EQ(ne.out, "DISTINCT\nSym\nNum\ndistance: 0.666667 (2/3)\n");
}

TEST(Cli, Oracle) {
  const Result r = run_cli({"oracle", "x^2+y", "b+a^2"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out.rfind("ISOMORPHIC\nwitness: ", 0), 0u);
  EXPECT_NE(r.out.find("first: 0:Add 1:Pow 2:x 3:2 4:y\n"), std::string::npos);
  const Result no = run_cli({"oracle", "x+y", "x*y"});
  EXPECT_EQ(no.out.rfind("NOT_ISOMORPHIC\nnodes_explored: ", 0), 0u);
  const Result big = run_cli({"oracle", "a+b+c", "a+b+c", "--limit", "3"});
  EXPECT_EQ(big.status, kExitDomainError);
  EXPECT_NE(big.err.find("TooLarge"), std::string::npos);
}

TEST(Cli, EvalIsDeterministicAcrossThreads) {
  const Result a = run_cli({"eval", "--pairs", "50", "--seed", "9"});
  const Result b = run_cli({"eval", "--pairs", "50", "--seed", "9", "--threads", "2"});
  EXPECT_EQ(a.status, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("false_equal             0\n"), std::string::npos);
  EXPECT_NE(a.out.find("pairs_tested            100\n"), std::string::npos);
}

TEST(Cli, IndexBuildAndQuery) {
  TempDir dir;
  const std::string corpus = dir.write(
      "corpus.jsonl",
      "{\"id\": \"binom\", \"expression\": \"(x+y)^2\"}\n"
      "{\"id\": \"quad\", \"expression\": \"x^2+y\"}\n"
      "{\"id\": \"trig\", \"expression\": \"sin(x)cos(x)\"}\n");
  const std::string index = dir.file("index.json");
  const Result built = run_cli({"index-build", corpus, "-o", index});
  EXPECT_EQ(built.status, kExitOk);
  EXPECT_EQ(built.out, "indexed 3 entries under 3 codes\n");

  const Result q = run_cli({"index-query", index, "(α+β)^2", "-k", "2"});
  EXPECT_EQ(q.status, kExitOk);
  EXPECT_EQ(q.out.rfind("binom\t0.000000\nquad\t", 0), 0u);
  EXPECT_EQ(std::count(q.out.begin(), q.out.end(), '\n'), 2);

  // A config that differs from the frozen one is refused, whether given
  // on the command line or through the environment.
  const std::string binary = dir.write("binary.cfg", "mode = binary\n");
  EXPECT_EQ(run_cli({"index-query", index, "x", "--config", binary}).status, kExitDomainError);
  Environment env;
  env.config_path = binary;
  const Result mismatch = run_cli({"index-query", index, "x"}, "", env);
  EXPECT_EQ(mismatch.status, kExitDomainError);
  EXPECT_NE(mismatch.err.find("ConfigMismatch"), std::string::npos);
  EXPECT_EQ(run_cli({"index-query", dir.file("missing.json"), "x"}).status, kExitDomainError);
}

TEST(Cli, ConfigFromEnvironmentAndFlag) {
  TempDir dir;
  const std::string cfg = dir.write("pi.cfg", "preserve_numbers = 3.14\n");
  Environment env;
  env.config_path = cfg;
  EXPECT_EQ(run_cli({"encode", "3.14*r^2"}, "", env).out, "0010010011SymNumNum:3.14PowMul\n");
  EXPECT_EQ(run_cli({"encode", "3.14*r^2", "--config", cfg}).out,
            "0010010011SymNumNum:3.14PowMul\n");
  EXPECT_EQ(run_cli({"encode", "3.14*r^2"}).out, "0010010011SymNumNumPowMul\n");
  const std::string bad = dir.write("bad.cfg", "mode = sideways\n");
  const Result r = run_cli({"encode", "x", "--config", bad});
  EXPECT_EQ(r.status, kExitDomainError);
  EXPECT_NE(r.err.find("InvalidConfig"), std::string::npos);
}

TEST(Cli, BinaryFlag) {
  const Result r = run_cli({"encode", "--binary", "a+b+c"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out, run_cli({"encode", "a+b+c"}).out);
}

}  // namespace
}  // namespace mexcode::cli
