#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tsloc/dataset.hpp"
#include "tsloc/generators.hpp"
#include "tsloc/random.hpp"

namespace tsloc {

// Where a feature window goes. Exactly one of random_location / fixed_start
// must be set; the window length is max(1, round(length_pct * n_timesteps)).
struct FeaturePlacement {
  bool random_location = false;
  std::optional<std::uint64_t> fixed_start;
  double length_pct = 1.0;
  bool align_across_channels = true;

  static FeaturePlacement random(double length_pct, bool align = true) {
    return {true, std::nullopt, length_pct, align};
  }
  static FeaturePlacement fixed(std::uint64_t start, double length_pct,
                                bool align = true) {
    return {false, start, length_pct, align};
  }

  friend bool operator==(const FeaturePlacement&,
                         const FeaturePlacement&) = default;
};

struct FeatureSpec {
  GeneratorSpec generator;
  FeaturePlacement placement;
  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

struct ChannelSpec {
  std::vector<GeneratorSpec> signals;
  std::vector<FeatureSpec> features;
  bool empty() const noexcept { return signals.empty() && features.empty(); }
  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct ClassSpec {
  std::int64_t label = 0;
  // Unlisted channels carry no signal and no feature.
  std::map<std::size_t, ChannelSpec> channels;
  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

struct BuilderConfig {
  std::size_t n_timesteps = 100;
  std::size_t n_dims = 1;
  std::size_t n_samples = 100;
  Normalization normalization = Normalization::kZScore;
  std::uint64_t random_state = 0;
  std::vector<ClassSpec> classes;
  bool keep_components = true;
  friend bool operator==(const BuilderConfig&, const BuilderConfig&) = default;
};

// Settings accepted by the TimeSeriesBuilder constructor.
struct BuilderSettings {
  std::size_t n_timesteps = 100;
  std::size_t n_dims = 1;
  std::size_t n_samples = 100;
  Normalization normalization = Normalization::kZScore;
  std::uint64_t random_state = 0;
  bool keep_components = true;
};

struct CloneOverrides {
  std::optional<std::size_t> n_samples;
  std::optional<std::uint64_t> random_state;
  std::optional<Normalization> normalization;
};

struct Window {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Window&, const Window&) = default;
};

// Window length for a placement: max(1, round(length_pct * n_timesteps)),
// rounding half away from zero, clamped to n_timesteps.
std::size_t window_length(double length_pct, std::size_t n_timesteps);

// Throws InvalidPlacement unless `placement` is usable for `n_timesteps`.
void validate_placement(const FeaturePlacement& placement,
                        std::size_t n_timesteps);

// Draws (start, length). Random placements take one uniform integer from
// `rng` (none when only start 0 fits); fixed placements consume nothing.
Window place_window(RandomStream& rng, const FeaturePlacement& placement,
                    std::size_t n_timesteps);

// Checks every config invariant; throws ConfigError, InvalidPlacement or a
// generator resolution error.
void validate_config(const BuilderConfig& config,
                     const GeneratorRegistry& registry =
                         GeneratorRegistry::global());

// Generates the dataset described by `config`.
//
// Samples are split across classes as evenly as possible (remainder to the
// lowest labels) and emitted class by class. Random numbers are drawn from a
// single stream seeded with config.random_state in this order: classes by
// ascending label, samples by ascending index, channels ascending, then per
// channel the signals in insertion order followed by the features in
// insertion order, each feature drawing its window before its content.
// Aligned features share one window per (sample, feature slot), drawn at the
// lowest channel carrying that slot.
Dataset build(const BuilderConfig& config,
              const GeneratorRegistry& registry = GeneratorRegistry::global());

// Fluent front end over BuilderConfig.
//
//   auto base = TimeSeriesBuilder({.n_timesteps = 100})
//                   .for_class(0)
//                   .add_signal(gen::gaussian_noise(1.0))
//                   .add_feature(gen::gaussian_pulse(3.0),
//                                FeaturePlacement::random(0.3));
//   auto train = base.clone({.n_samples = 200, .random_state = 42}).build();
class TimeSeriesBuilder {
 public:
  explicit TimeSeriesBuilder(BuilderSettings settings = {});
  // Starts from an existing config (e.g. one loaded from YAML).
  static TimeSeriesBuilder from_config(BuilderConfig config);

  TimeSeriesBuilder& for_class(std::int64_t label);
  TimeSeriesBuilder& add_signal(GeneratorSpec spec, std::size_t channel = 0);
  TimeSeriesBuilder& add_feature(GeneratorSpec spec, FeaturePlacement placement,
                                 std::size_t channel = 0);

  TimeSeriesBuilder& n_samples(std::size_t n);
  TimeSeriesBuilder& random_state(std::uint64_t seed);
  TimeSeriesBuilder& normalization(Normalization n);
  TimeSeriesBuilder& keep_components(bool keep);

  TimeSeriesBuilder clone(const CloneOverrides& overrides = {}) const;

  const BuilderConfig& config() const noexcept { return config_; }

  Dataset build(const GeneratorRegistry& registry =
                    GeneratorRegistry::global()) const;

 private:
  ChannelSpec& scoped_channel(std::size_t channel);

  BuilderConfig config_;
  std::optional<std::size_t> scope_;  // index into config_.classes
};

}  // namespace tsloc
