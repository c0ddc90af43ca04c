#include <benchmark/benchmark.h>

#include "tsloc/builder.hpp"
#include "tsloc/generators.hpp"

namespace {

using namespace tsloc;

TimeSeriesBuilder two_class(std::size_t n_samples, std::size_t n_timesteps, std::size_t n_dims) {
  TimeSeriesBuilder b({.n_timesteps = n_timesteps, .n_dims = n_dims, .n_samples = n_samples,
                       .random_state = 42});
  for (std::int64_t label = 0; label < 2; ++label) {
    b.for_class(label);
    for (std::size_t ch = 0; ch < n_dims; ++ch) {
      b.add_signal(gen::gaussian_noise(1.0), ch)
          .add_feature(label == 0 ? gen::gaussian_pulse(3.0) : gen::seasonal(10, 3.0),
                       FeaturePlacement::random(0.3), ch);
    }
  }
  return b;
}

void BM_Build(benchmark::State& state) {
  const auto b = two_class(static_cast<std::size_t>(state.range(0)),
                           static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(b.build());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_Build)->Args({200, 100})->Args({2000, 100})->Args({200, 1000});

void BM_BuildMultivariate(benchmark::State& state) {
  const auto b = two_class(200, 100, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(b.build());
}
BENCHMARK(BM_BuildMultivariate)->Arg(3)->Arg(16);

void BM_Generator(benchmark::State& state, GeneratorSpec spec) {
  const auto g = GeneratorRegistry::global().resolve(spec);
  RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(g(static_cast<std::size_t>(state.range(0)), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Generator, gaussian_noise, gen::gaussian_noise(1.0))->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_Generator, red_noise, gen::red_noise(1.0))->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_Generator, seasonal, gen::seasonal(10, 3.0))->Arg(1 << 16);

}  // namespace
