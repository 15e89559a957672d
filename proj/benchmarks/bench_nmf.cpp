#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "topicforge/nmf.hpp"
#include "topicforge/query.hpp"
#include "topicforge/text_pipeline.hpp"

using namespace topicforge;

namespace {

LabeledMatrix random_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<std::vector<double>> g(n, std::vector<double>(m));
  for (auto& row : g)
    for (auto& x : row) x = u(rng);
  return LabeledMatrix::from_rows(numbered_labels("t", n), numbered_labels("d", m), g);
}

void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rank = static_cast<std::size_t>(state.range(1));
  const auto v = random_matrix(n, n / 2, 1);
  auto f = initialize(v, rank, 7);
  NmfConfig c;
  c.rank = rank;
  for (auto _ : state) {
    auto s = step(v, f.w, f.h, c);
    benchmark::DoNotOptimize(s.error);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->Args({100, 5})->Args({400, 10})->Args({1000, 20});

void BM_FactorizeRestarts(benchmark::State& state) {
  const auto v = random_matrix(200, 100, 3);
  NmfConfig c;
  c.rank = 8;
  c.restarts = 8;
  c.max_iters = 200;
  FactorizeOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto f = factorize(v, c, opts);
    benchmark::DoNotOptimize(f.final_error());
  }
}
BENCHMARK(BM_FactorizeRestarts)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MovieRankTwo(benchmark::State& state) {
  const auto v = LabeledMatrix::from_rows(
      {"Alien", "Jaws", "Beetlejuice", "Animal House", "Life of Brian"},
      {"Cindy", "Dora", "Alice", "Becky"},
      {{4, 5, 4, 1}, {5, 5, 5, 1}, {5, 3, 2, 2}, {4, 2, 1, 5}, {5, 1, 1, 5}});
  NmfConfig c;
  c.rank = 2;
  c.restarts = 20;
  for (auto _ : state) {
    auto f = factorize(v, c, {1});
    benchmark::DoNotOptimize(f.final_error());
  }
}
BENCHMARK(BM_MovieRankTwo)->Unit(benchmark::kMicrosecond);

void BM_BuildCorpus(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"matrix", "vector", "eigenvalue", "factor", "topic",
                                          "document", "term", "rank", "norm", "update"};
  std::vector<Document> docs;
  for (int d = 0; d < 200; ++d) {
    std::string body;
    for (int t = 0; t < 300; ++t) body += words[rng() % words.size()] + "s and the ";
    docs.push_back({"doc" + std::to_string(d), "", body});
  }
  const auto config = default_pipeline_config();
  for (auto _ : state) {
    auto c = build_corpus(docs, config);
    benchmark::DoNotOptimize(c.matrix.n_rows());
  }
}
BENCHMARK(BM_BuildCorpus)->Unit(benchmark::kMillisecond);

void BM_TermsForDocs(benchmark::State& state) {
  const auto a = random_matrix(5000, 500, 5);
  const std::vector<std::string> docs = {"d1", "d17", "d250", "d499"};
  for (auto _ : state) {
    auto q = terms_for_docs(a, docs);
    benchmark::DoNotOptimize(q.vector[0]);
  }
}
BENCHMARK(BM_TermsForDocs);

}  // namespace

BENCHMARK_MAIN();
