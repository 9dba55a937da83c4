#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mexcode/mexcode.hpp"

namespace {

using namespace mexcode;

std::vector<std::string> corpus_sources(std::size_t n, int depth) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen_random_expr(i, depth, 4));
  return out;
}

void BM_Encode(benchmark::State& state) {
  const auto sources = corpus_sources(1024, static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(sources[i++ % sources.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Encode)->Arg(4)->Arg(6)->Arg(8);

void BM_EncodeBinary(benchmark::State& state) {
  const auto sources = corpus_sources(1024, 6);
  EncoderConfig config;
  config.mode = TreeMode::Binary;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(sources[i++ % sources.size()], config));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EncodeBinary);

void BM_IsoOracleTwins(benchmark::State& state) {
  std::vector<std::pair<ExpressionGraph, ExpressionGraph>> pairs;
  for (std::uint64_t s = 0; s < 256; ++s) {
    const Ast ast = gen_random_ast(s, 4, 4);
    pairs.emplace_back(build_graph(ast), build_graph(make_twin(ast, s + 1)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(iso_oracle(a, b));
  }
}
BENCHMARK(BM_IsoOracleTwins);

void BM_IndexQuery(benchmark::State& state) {
  std::vector<CorpusEntry> corpus;
  const auto sources = corpus_sources(static_cast<std::size_t>(state.range(0)), 5);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    corpus.push_back({"e" + std::to_string(i), sources[i], {}});
  }
  const CorpusIndex index = CorpusIndex::build(corpus);
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query("(x+y)^2 + sin(z)", 10));
  }
}
BENCHMARK(BM_IndexQuery)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
