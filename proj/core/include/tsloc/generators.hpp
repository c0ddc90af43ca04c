#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tsloc/random.hpp"

namespace tsloc {

using ParamMap = std::map<std::string, double, std::less<>>;

// A generator kind plus its numeric parameters, resolved through a registry.
struct GeneratorSpec {
  std::string kind;
  ParamMap params;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// (length, rng, params) -> exactly `length` finite values.
using GeneratorFn =
    std::function<std::vector<double>(std::size_t, RandomStream&, const ParamMap&)>;

// Advisory only: every generator may be used as a signal or a feature.
enum class RoleHint { kSignal, kFeature, kEither };

struct ParamDef {
  std::string name;
  // Parameters without a default are required.
  std::optional<double> default_value;
  // Returns an error message when the value is out of domain.
  std::function<std::optional<std::string>(double)> check;
};

struct GeneratorInfo {
  std::string name;
  GeneratorFn fn;
  std::vector<ParamDef> params;
  RoleHint role_hint = RoleHint::kEither;
  // Checks spanning several parameters (e.g. low < high); throws InvalidParam.
  std::function<void(const ParamMap&)> cross_check;
};

// A generator with validated, default-completed parameters. Calling it
// enforces the output contract and throws GeneratorContractViolation when a
// (custom) generator returns the wrong length or a non-finite value.
class BoundGenerator {
 public:
  BoundGenerator(std::shared_ptr<const GeneratorInfo> info, ParamMap params);

  std::vector<double> operator()(std::size_t length, RandomStream& rng) const;

  const std::string& kind() const noexcept { return info_->name; }
  const ParamMap& params() const noexcept { return params_; }
  RoleHint role_hint() const noexcept { return info_->role_hint; }

 private:
  std::shared_ptr<const GeneratorInfo> info_;
  ParamMap params_;
};

struct RegisterOptions {
  RoleHint role_hint = RoleHint::kEither;
  // Optional parameters and their defaults.
  ParamMap optional_params;
  bool overwrite = false;
};

// Name-keyed generator catalog. Registration is expected at startup; lookups
// take a shared lock and may run concurrently with each other.
class GeneratorRegistry {
 public:
  // An empty registry.
  GeneratorRegistry() = default;
  GeneratorRegistry(const GeneratorRegistry& other);
  GeneratorRegistry& operator=(const GeneratorRegistry& other);

  static GeneratorRegistry with_builtins();
  // Process-wide registry pre-populated with the built-in catalog.
  static GeneratorRegistry& global();

  void register_generator(const std::string& name, GeneratorFn fn,
                          const std::vector<std::string>& required_params,
                          RegisterOptions options = {});
  void register_generator(GeneratorInfo info, bool overwrite = false);

  // Throws UnknownGenerator, MissingParam or InvalidParam.
  BoundGenerator resolve(const GeneratorSpec& spec) const;

  // Params of `spec` with defaults filled in; throws like resolve().
  ParamMap complete_params(const GeneratorSpec& spec) const;

  bool contains(std::string_view name) const;
  // Declared parameter names of a registered kind; throws UnknownGenerator.
  std::vector<std::string> param_names(std::string_view name) const;
  std::vector<std::string> names() const;
  // Registered names within a small edit distance of `name`, closest first.
  std::vector<std::string> suggestions(std::string_view name) const;

 private:
  std::shared_ptr<const GeneratorInfo> find(std::string_view name) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const GeneratorInfo>, std::less<>>
      entries_;
};

// Built-in primitives. Deterministic ones ignore `rng`. All throw
// InvalidParam for out-of-domain arguments and for length == 0.
std::vector<double> gaussian_noise(std::size_t length, RandomStream& rng,
                                   double sigma);
std::vector<double> uniform_noise(std::size_t length, RandomStream& rng,
                                  double low, double high);
// AR(1): x0 = e0, x_t = phi * x_{t-1} + e_t with e_t ~ N(0, sigma^2).
std::vector<double> red_noise(std::size_t length, RandomStream& rng,
                              double sigma, double phi = 0.9);
std::vector<double> random_walk(std::size_t length, RandomStream& rng,
                                double step_sigma);
std::vector<double> seasonal(std::size_t length, RandomStream& rng,
                             double period, double amplitude,
                             double phase = 0.0);
std::vector<double> trend(std::size_t length, RandomStream& rng, double slope,
                          double intercept = 0.0);
// Symmetric triangle peaking at index (length - 1) / 2.
std::vector<double> peak(std::size_t length, RandomStream& rng,
                         double amplitude);
std::vector<double> trough(std::size_t length, RandomStream& rng,
                           double amplitude);
// Centered at (length - 1) / 2 with sigma = width_fraction * length; not
// truncated at the window edges.
std::vector<double> gaussian_pulse(std::size_t length, RandomStream& rng,
                                   double amplitude,
                                   double width_fraction = 1.0 / 6.0);

// Spec constructors for the fluent builder. Only the parameters passed
// explicitly are recorded; defaults are filled in at resolution time.
namespace gen {
GeneratorSpec gaussian_noise(double sigma);
GeneratorSpec uniform_noise(double low, double high);
GeneratorSpec red_noise(double sigma);
GeneratorSpec red_noise(double sigma, double phi);
GeneratorSpec random_walk(double step_sigma);
GeneratorSpec seasonal(double period, double amplitude);
GeneratorSpec seasonal(double period, double amplitude, double phase);
GeneratorSpec trend(double slope);
GeneratorSpec trend(double slope, double intercept);
GeneratorSpec peak(double amplitude);
GeneratorSpec trough(double amplitude);
GeneratorSpec gaussian_pulse(double amplitude);
GeneratorSpec gaussian_pulse(double amplitude, double width_fraction);
}  // namespace gen

}  // namespace tsloc
