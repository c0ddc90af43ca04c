#include <benchmark/benchmark.h>

#include "tsloc/builder.hpp"
#include "tsloc/metrics.hpp"

namespace {

using namespace tsloc;

struct Fixture {
  Dataset ds;
  TimeSeriesTensor attr;
};

Fixture make(std::size_t n_timesteps) {
  TimeSeriesBuilder b({.n_timesteps = n_timesteps, .n_samples = 200, .random_state = 7});
  b.for_class(0)
      .add_signal(gen::gaussian_noise(1.0))
      .add_feature(gen::gaussian_pulse(3.0), FeaturePlacement::random(0.3));
  auto ds = b.build();
  // Noisy attribution: |X| is a cheap stand-in with realistic ties.
  std::vector<double> a(ds.X().values().begin(), ds.X().values().end());
  TimeSeriesTensor attr(ds.shape(), std::move(a));
  return {std::move(ds), std::move(attr)};
}

void BM_Metric(benchmark::State& state, const char* name) {
  const auto f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(f.attr, f.ds, {}, {name}));
  state.SetItemsProcessed(state.iterations() * 200 * state.range(0));
}
BENCHMARK_CAPTURE(BM_Metric, auc_roc, "auc_roc")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_Metric, auc_pr, "auc_pr")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_Metric, relevance_rank, "relevance_rank")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_Metric, nac, "nac")->Arg(100)->Arg(1000);

void BM_EvaluateAll(benchmark::State& state) {
  const auto f = make(100);
  const std::vector<std::string> all(std::begin(kMetricNames), std::end(kMetricNames));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(f.attr, f.ds, {}, all));
}
BENCHMARK(BM_EvaluateAll);

}  // namespace
