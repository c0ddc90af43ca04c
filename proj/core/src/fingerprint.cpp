#include "tsloc/fingerprint.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "tsloc/errors.hpp"

namespace tsloc {
namespace {

using nlohmann::json;

double canonical_number(double v) { return v == 0.0 ? 0.0 : v; }

json generator_json(const GeneratorSpec& spec,
                    const GeneratorRegistry& registry) {
  ParamMap params = spec.params;
  if (registry.contains(spec.kind)) {
    try {
      params = registry.complete_params(spec);
    } catch (const Error&) {
      // Invalid specs still get a fingerprint; build() reports the error.
    }
  }
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = canonical_number(v);
  return json{{"kind", spec.kind}, {"params", std::move(p)}};
}

json placement_json(const FeaturePlacement& placement) {
  json j{{"random_location", placement.random_location},
         {"length_pct", canonical_number(placement.length_pct)},
         {"align_across_channels", placement.align_across_channels}};
  if (placement.fixed_start) {
    j["fixed_start"] = *placement.fixed_start;
  } else {
    j["fixed_start"] = nullptr;
  }
  return j;
}

}  // namespace

std::string canonical_json(const BuilderConfig& config,
                           const GeneratorRegistry& registry) {
  std::vector<const ClassSpec*> classes;
  for (const auto& c : config.classes) classes.push_back(&c);
  std::ranges::stable_sort(classes, {}, &ClassSpec::label);

  json jclasses = json::array();
  for (const auto* cls : classes) {
    json channels = json::object();
    for (const auto& [index, channel] : cls->channels) {
      if (channel.empty()) continue;
      json signals = json::array();
      for (const auto& s : channel.signals) {
        signals.push_back(generator_json(s, registry));
      }
      json features = json::array();
      for (const auto& f : channel.features) {
        features.push_back(json{{"generator", generator_json(f.generator, registry)},
                                {"placement", placement_json(f.placement)}});
      }
      channels[std::to_string(index)] =
          json{{"signals", std::move(signals)}, {"features", std::move(features)}};
    }
    jclasses.push_back(json{{"label", cls->label}, {"channels", std::move(channels)}});
  }

  const json doc{{"n_timesteps", config.n_timesteps},
                 {"n_dims", config.n_dims},
                 {"n_samples", config.n_samples},
                 {"normalization", std::string(to_string(config.normalization))},
                 {"random_state", config.random_state},
                 {"classes", std::move(jclasses)}};
  return doc.dump();
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fingerprint(const BuilderConfig& config,
                        const GeneratorRegistry& registry) {
  return "fnv1a64:" + fnv1a64_hex(canonical_json(config, registry));
}

}  // namespace tsloc
