#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "urnlda/alias_table.hpp"
#include "urnlda/distributions.hpp"
#include "urnlda/poisson_cache.hpp"
#include "urnlda/sampler.hpp"

using namespace urnlda;

namespace {

// K = 100, V = 10^4 with counts taken from a short PU run, so n has the
// sparsity of a real fit rather than of the random initialization.
struct Workload {
  SyntheticCorpus synth;
  std::unique_ptr<Sampler> sampler;

  Workload() : synth(synth_corpus(100, 10000, 1000, 100, 0.1, 0.01, 1)) {
    SamplerConfig cfg;
    cfg.num_topics = 100;
    cfg.seed = 2;
    sampler = std::make_unique<Sampler>(synth.corpus, cfg);
    for (int i = 0; i < 20; ++i) sampler->step();
  }
};

Workload& workload() {
  static Workload w;
  return w;
}

void BM_DrawPhiPU(benchmark::State& state) {
  auto& w = workload();
  const PoissonAliasCache cache(0.01);
  std::uint64_t it = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_phi_pu(w.sampler->state().n, cache, 3, ++it, 1));
}
BENCHMARK(BM_DrawPhiPU)->Unit(benchmark::kMillisecond);

void BM_DrawPhiPC(benchmark::State& state) {
  auto& w = workload();
  std::uint64_t it = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_phi_pc(w.sampler->state().n, 0.01, 3, ++it, 1));
}
BENCHMARK(BM_DrawPhiPC)->Unit(benchmark::kMillisecond);

void BM_PUIteration(benchmark::State& state) {
  const auto synth = synth_corpus(100, 10000, 1000, 100, 0.1, 0.01, 1);
  SamplerConfig cfg;
  cfg.num_topics = 100;
  cfg.workers = static_cast<std::size_t>(state.range(0));
  Sampler sampler(synth.corpus, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.step());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(synth.corpus.num_tokens()));
}
BENCHMARK(BM_PUIteration)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CollapsedIteration(benchmark::State& state) {
  const auto synth = synth_corpus(100, 10000, 1000, 100, 0.1, 0.01, 1);
  SamplerConfig cfg;
  cfg.variant = SamplerVariant::collapsed;
  cfg.num_topics = 100;
  Sampler sampler(synth.corpus, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.step());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(synth.corpus.num_tokens()));
}
BENCHMARK(BM_CollapsedIteration)->Unit(benchmark::kMillisecond);

void BM_AliasSample(benchmark::State& state) {
  Rng rng(4);
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  for (auto& x : w) x = rng.uniform();
  const AliasTable table(w);
  for (auto _ : state) benchmark::DoNotOptimize(table.sample(rng));
}
BENCHMARK(BM_AliasSample)->Arg(8)->Arg(1024)->Arg(1 << 20);

void BM_PoissonCached(benchmark::State& state) {
  const PoissonAliasCache cache(0.01);
  Rng rng(5);
  const auto l = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cache.sample(l, rng));
}
BENCHMARK(BM_PoissonCached)->Arg(0)->Arg(5)->Arg(50);

void BM_PoissonDirect(benchmark::State& state) {
  Rng rng(6);
  const double rate = 0.01 + static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_sample(rate, rng));
}
BENCHMARK(BM_PoissonDirect)->Arg(0)->Arg(5)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
