#include "tsloc/builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tsloc/errors.hpp"
#include "tsloc/fingerprint.hpp"

namespace tsloc {
namespace {

constexpr double kMinStd = 1e-12;

struct ResolvedFeature {
  BoundGenerator generator;
  FeaturePlacement placement;
};

struct ResolvedChannel {
  std::vector<BoundGenerator> signals;
  std::vector<ResolvedFeature> features;
};

struct ResolvedClass {
  std::int64_t label = 0;
  std::vector<ResolvedChannel> channels;  // one per dim
};

void zscore_in_place(std::span<double> x) {
  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (const double v : x) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (sd < kMinStd) {
    std::ranges::fill(x, 0.0);
    return;
  }
  for (auto& v : x) v = (v - mean) / sd;
}

std::vector<std::size_t> class_counts(std::size_t n_samples,
                                      std::size_t n_classes) {
  std::vector<std::size_t> counts(n_classes, n_samples / n_classes);
  for (std::size_t i = 0; i < n_samples % n_classes; ++i) ++counts[i];
  return counts;
}

}  // namespace

std::size_t window_length(double length_pct, std::size_t n_timesteps) {
  const double raw = std::round(length_pct * static_cast<double>(n_timesteps));
  if (!(raw >= 1.0)) return 1;
  if (raw >= static_cast<double>(n_timesteps)) return n_timesteps;
  return static_cast<std::size_t>(raw);
}

void validate_placement(const FeaturePlacement& placement,
                        std::size_t n_timesteps) {
  if (!(placement.length_pct > 0.0 && placement.length_pct <= 1.0)) {
    std::ostringstream os;
    os << "length_pct must lie in (0, 1], got " << placement.length_pct;
    throw InvalidPlacement(os.str());
  }
  if (placement.random_location && placement.fixed_start) {
    throw InvalidPlacement(
        "random_location and fixed_start are mutually exclusive");
  }
  if (!placement.random_location && !placement.fixed_start) {
    throw InvalidPlacement(
        "a feature needs either random_location or a fixed_start");
  }
  if (placement.fixed_start) {
    const std::size_t w = window_length(placement.length_pct, n_timesteps);
    if (*placement.fixed_start + w > n_timesteps) {
      throw InvalidPlacement(
          "window [" + std::to_string(*placement.fixed_start) + ", " +
          std::to_string(*placement.fixed_start + w) + ") exceeds " +
          std::to_string(n_timesteps) + " timesteps");
    }
  }
}

Window place_window(RandomStream& rng, const FeaturePlacement& placement,
                    std::size_t n_timesteps) {
  validate_placement(placement, n_timesteps);
  const std::size_t w = window_length(placement.length_pct, n_timesteps);
  if (placement.fixed_start) {
    return {static_cast<std::size_t>(*placement.fixed_start), w};
  }
  return {static_cast<std::size_t>(rng.uniform_int(0, n_timesteps - w)), w};
}

void validate_config(const BuilderConfig& config,
                     const GeneratorRegistry& registry) {
  if (config.n_timesteps < 1 || config.n_dims < 1 || config.n_samples < 1) {
    throw ConfigError(ConfigErrorCode::kInvalidExtent,
                      "n_timesteps, n_dims and n_samples must all be >= 1");
  }
  if (config.classes.empty()) {
    throw ConfigError(ConfigErrorCode::kNoClasses,
                      "config defines no classes");
  }

  std::set<std::int64_t> labels;
  for (const auto& cls : config.classes) {
    if (cls.label < 0) {
      throw ConfigError(ConfigErrorCode::kNegativeLabel,
                        "class label " + std::to_string(cls.label) +
                            " is negative");
    }
    if (!labels.insert(cls.label).second) {
      throw ConfigError(ConfigErrorCode::kNonContiguousLabels,
                        "class label " + std::to_string(cls.label) +
                            " appears twice");
    }
  }
  if (*labels.rbegin() != static_cast<std::int64_t>(labels.size()) - 1) {
    std::string listed;
    for (const auto l : labels) {
      listed += (listed.empty() ? "" : ", ") + std::to_string(l);
    }
    throw ConfigError(ConfigErrorCode::kNonContiguousLabels,
                      "class labels must be 0..K-1 without gaps, got {" +
                          listed + "}");
  }

  for (const auto& cls : config.classes) {
    bool any = false;
    // slot index -> placement of the first aligned channel carrying it
    std::map<std::size_t, FeaturePlacement> aligned;
    for (const auto& [index, channel] : cls.channels) {
      if (index >= config.n_dims) {
        throw ChannelOutOfRange("class " + std::to_string(cls.label) +
                                " uses channel " + std::to_string(index) +
                                " but n_dims is " +
                                std::to_string(config.n_dims));
      }
      any = any || !channel.empty();
      for (const auto& s : channel.signals) registry.resolve(s);
      for (std::size_t k = 0; k < channel.features.size(); ++k) {
        const auto& f = channel.features[k];
        registry.resolve(f.generator);
        validate_placement(f.placement, config.n_timesteps);
        if (!f.placement.align_across_channels) continue;
        auto [it, inserted] = aligned.emplace(k, f.placement);
        if (!inserted && !(it->second == f.placement)) {
          throw ConfigError(
              ConfigErrorCode::kMisalignedFeatures,
              "class " + std::to_string(cls.label) + " feature slot " +
                  std::to_string(k) +
                  " is aligned across channels but the placements differ");
        }
      }
    }
    if (!any) {
      throw ConfigError(ConfigErrorCode::kEmptyClass,
                        "class " + std::to_string(cls.label) +
                            " has no signals and no features");
    }
  }
}

Dataset build(const BuilderConfig& config, const GeneratorRegistry& registry) {
  validate_config(config, registry);

  std::vector<ResolvedClass> classes;
  for (const auto& cls : config.classes) {
    ResolvedClass rc;
    rc.label = cls.label;
    rc.channels.resize(config.n_dims);
    for (const auto& [index, channel] : cls.channels) {
      auto& out = rc.channels[index];
      for (const auto& s : channel.signals) {
        out.signals.push_back(registry.resolve(s));
      }
      for (const auto& f : channel.features) {
        out.features.push_back({registry.resolve(f.generator), f.placement});
      }
    }
    classes.push_back(std::move(rc));
  }
  std::ranges::sort(classes, {}, &ResolvedClass::label);

  const std::size_t T = config.n_timesteps;
  const Shape shape{config.n_samples, config.n_dims, T};
  TimeSeriesTensor x(shape);
  TimeSeriesTensor signal(shape);
  TimeSeriesTensor feature(shape);
  GroundTruthMask mask(shape);
  std::vector<std::int64_t> y;
  y.reserve(config.n_samples);
  std::uint64_t overlaps = 0;

  RandomStream rng(config.random_state);
  const auto counts = class_counts(config.n_samples, classes.size());

  std::size_t sample = 0;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& cls = classes[ci];
    for (std::size_t k = 0; k < counts[ci]; ++k, ++sample) {
      y.push_back(cls.label);
      std::map<std::size_t, Window> shared_windows;
      for (std::size_t ch = 0; ch < config.n_dims; ++ch) {
        const auto& spec = cls.channels[ch];
        auto n = signal.slice(sample, ch);
        auto f = feature.slice(sample, ch);
        auto m = mask.slice(sample, ch);

        for (const auto& gen : spec.signals) {
          const auto v = gen(T, rng);
          for (std::size_t t = 0; t < T; ++t) n[t] += v[t];
        }

        bool overlapped = false;
        for (std::size_t slot = 0; slot < spec.features.size(); ++slot) {
          const auto& feat = spec.features[slot];
          Window w;
          const bool align = feat.placement.align_across_channels;
          if (auto it = shared_windows.find(slot);
              align && it != shared_windows.end()) {
            w = it->second;
          } else {
            w = place_window(rng, feat.placement, T);
            if (align) shared_windows.emplace(slot, w);
          }
          const auto v = feat.generator(w.length, rng);
          for (std::size_t i = 0; i < w.length; ++i) {
            overlapped = overlapped || m[w.start + i] != 0;
            f[w.start + i] += v[i];
            m[w.start + i] = 1;
          }
        }
        if (overlapped) ++overlaps;

        auto xs = x.slice(sample, ch);
        for (std::size_t t = 0; t < T; ++t) xs[t] = n[t] + f[t];
        if (config.normalization == Normalization::kZScore) zscore_in_place(xs);
      }
    }
  }

  DatasetMeta meta;
  meta.n_classes = static_cast<std::int64_t>(classes.size());
  for (const auto& c : classes) meta.class_labels.push_back(c.label);
  meta.random_state = config.random_state;
  meta.normalization = config.normalization;
  meta.config_json = canonical_json(config, registry);
  meta.config_fingerprint = "fnv1a64:" + fnv1a64_hex(meta.config_json);
  meta.generator_catalog_version = std::string(kGeneratorCatalogVersion);
  meta.overlapping_windows = overlaps;

  std::optional<Components> components;
  if (config.keep_components) {
    components = Components{std::move(signal), std::move(feature)};
  }
  return Dataset(std::move(x), std::move(y), std::move(mask),
                 std::move(components), std::move(meta));
}

// ---------------------------------------------------------------------------
// TimeSeriesBuilder

TimeSeriesBuilder::TimeSeriesBuilder(BuilderSettings settings) {
  config_.n_timesteps = settings.n_timesteps;
  config_.n_dims = settings.n_dims;
  config_.n_samples = settings.n_samples;
  config_.normalization = settings.normalization;
  config_.random_state = settings.random_state;
  config_.keep_components = settings.keep_components;
}

TimeSeriesBuilder TimeSeriesBuilder::from_config(BuilderConfig config) {
  TimeSeriesBuilder b;
  b.config_ = std::move(config);
  return b;
}

TimeSeriesBuilder& TimeSeriesBuilder::for_class(std::int64_t label) {
  if (label < 0) {
    throw ConfigError(ConfigErrorCode::kNegativeLabel,
                      "class label " + std::to_string(label) + " is negative");
  }
  const auto it = std::ranges::find(config_.classes, label, &ClassSpec::label);
  if (it != config_.classes.end()) {
    scope_ = static_cast<std::size_t>(it - config_.classes.begin());
  } else {
    config_.classes.push_back(ClassSpec{label, {}});
    scope_ = config_.classes.size() - 1;
  }
  return *this;
}

ChannelSpec& TimeSeriesBuilder::scoped_channel(std::size_t channel) {
  if (!scope_) {
    throw NoClassScope("call for_class() before adding signals or features");
  }
  if (channel >= config_.n_dims) {
    throw ChannelOutOfRange("channel " + std::to_string(channel) +
                            " is out of range for n_dims " +
                            std::to_string(config_.n_dims));
  }
  return config_.classes[*scope_].channels[channel];
}

TimeSeriesBuilder& TimeSeriesBuilder::add_signal(GeneratorSpec spec,
                                                 std::size_t channel) {
  scoped_channel(channel).signals.push_back(std::move(spec));
  return *this;
}

TimeSeriesBuilder& TimeSeriesBuilder::add_feature(GeneratorSpec spec,
                                                  FeaturePlacement placement,
                                                  std::size_t channel) {
  auto& target = scoped_channel(channel);
  validate_placement(placement, config_.n_timesteps);
  target.features.push_back({std::move(spec), placement});
  return *this;
}

TimeSeriesBuilder& TimeSeriesBuilder::n_samples(std::size_t n) {
  config_.n_samples = n;
  return *this;
}

TimeSeriesBuilder& TimeSeriesBuilder::random_state(std::uint64_t seed) {
  config_.random_state = seed;
  return *this;
}

TimeSeriesBuilder& TimeSeriesBuilder::normalization(Normalization n) {
  config_.normalization = n;
  return *this;
}

TimeSeriesBuilder& TimeSeriesBuilder::keep_components(bool keep) {
  config_.keep_components = keep;
  return *this;
}

TimeSeriesBuilder TimeSeriesBuilder::clone(const CloneOverrides& overrides) const {
  TimeSeriesBuilder copy = *this;
  if (overrides.n_samples) copy.config_.n_samples = *overrides.n_samples;
  if (overrides.random_state) copy.config_.random_state = *overrides.random_state;
  if (overrides.normalization) copy.config_.normalization = *overrides.normalization;
  return copy;
}

Dataset TimeSeriesBuilder::build(const GeneratorRegistry& registry) const {
  return tsloc::build(config_, registry);
}

}  // namespace tsloc
