#include "tsloc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "tsloc/errors.hpp"

namespace tsloc {
namespace {

void require_length(std::size_t length) {
  if (length == 0) throw InvalidParam("length", "length must be >= 1");
}

void require_finite_param(std::string_view name, double value) {
  if (!std::isfinite(value)) {
    throw InvalidParam(std::string(name),
                       std::string(name) + " must be finite");
  }
}

void require_positive(std::string_view name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be > 0, got " << value;
    throw InvalidParam(std::string(name), os.str());
  }
}

std::optional<std::string> positive(double v) {
  if (v > 0.0 && std::isfinite(v)) return std::nullopt;
  return std::string("must be a finite number > 0");
}

std::optional<std::string> finite(double v) {
  if (std::isfinite(v)) return std::nullopt;
  return std::string("must be finite");
}

std::optional<std::string> open_unit_interval(double v) {
  if (v > -1.0 && v < 1.0) return std::nullopt;
  return std::string("must lie in (-1, 1)");
}

std::optional<std::string> width_domain(double v) {
  if (v > 0.0 && v <= 1.0) return std::nullopt;
  return std::string("must lie in (0, 1]");
}

std::vector<double> triangle(std::size_t length, double amplitude) {
  std::vector<double> out(length, 0.0);
  const std::size_t mid = (length - 1) / 2;
  const std::size_t tail = length - 1 - mid;
  for (std::size_t t = 0; t < length; ++t) {
    if (t == mid) {
      out[t] = amplitude;
    } else if (t < mid) {
      out[t] = amplitude * static_cast<double>(t) / static_cast<double>(mid);
    } else {
      out[t] = amplitude * static_cast<double>(length - 1 - t) /
               static_cast<double>(tail);
    }
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

GeneratorInfo builtin(std::string name, std::vector<ParamDef> params,
                      RoleHint hint, GeneratorFn fn) {
  GeneratorInfo info;
  info.name = std::move(name);
  info.params = std::move(params);
  info.role_hint = hint;
  info.fn = std::move(fn);
  return info;
}

void add_builtins(GeneratorRegistry& registry) {
  registry.register_generator(builtin(
      "gaussian_noise", {{"sigma", std::nullopt, positive}}, RoleHint::kSignal,
      [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return gaussian_noise(n, rng, p.at("sigma"));
      }));

  auto uniform = builtin(
      "uniform_noise",
      {{"low", std::nullopt, finite}, {"high", std::nullopt, finite}},
      RoleHint::kSignal, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return uniform_noise(n, rng, p.at("low"), p.at("high"));
      });
  uniform.cross_check = [](const ParamMap& p) {
    if (!(p.at("high") > p.at("low"))) {
      throw InvalidParam("high", "high must be greater than low");
    }
  };
  registry.register_generator(std::move(uniform));

  registry.register_generator(builtin(
      "red_noise",
      {{"sigma", std::nullopt, positive}, {"phi", 0.9, open_unit_interval}},
      RoleHint::kSignal, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return red_noise(n, rng, p.at("sigma"), p.at("phi"));
      }));

  registry.register_generator(builtin(
      "random_walk", {{"step_sigma", std::nullopt, positive}},
      RoleHint::kSignal, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return random_walk(n, rng, p.at("step_sigma"));
      }));

  registry.register_generator(builtin(
      "seasonal",
      {{"period", std::nullopt, positive},
       {"amplitude", std::nullopt, finite},
       {"phase", 0.0, finite}},
      RoleHint::kSignal, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return seasonal(n, rng, p.at("period"), p.at("amplitude"),
                        p.at("phase"));
      }));

  registry.register_generator(builtin(
      "trend", {{"slope", std::nullopt, finite}, {"intercept", 0.0, finite}},
      RoleHint::kSignal, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return trend(n, rng, p.at("slope"), p.at("intercept"));
      }));

  registry.register_generator(builtin(
      "peak", {{"amplitude", std::nullopt, finite}}, RoleHint::kFeature,
      [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return peak(n, rng, p.at("amplitude"));
      }));

  registry.register_generator(builtin(
      "trough", {{"amplitude", std::nullopt, finite}}, RoleHint::kFeature,
      [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return trough(n, rng, p.at("amplitude"));
      }));

  registry.register_generator(builtin(
      "gaussian_pulse",
      {{"amplitude", std::nullopt, finite},
       {"width_fraction", 1.0 / 6.0, width_domain}},
      RoleHint::kFeature, [](std::size_t n, RandomStream& rng, const ParamMap& p) {
        return gaussian_pulse(n, rng, p.at("amplitude"), p.at("width_fraction"));
      }));
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in primitives

std::vector<double> gaussian_noise(std::size_t length, RandomStream& rng,
                                   double sigma) {
  require_length(length);
  require_positive("sigma", sigma);
  std::vector<double> out(length);
  for (auto& v : out) v = rng.normal(sigma);
  return out;
}

std::vector<double> uniform_noise(std::size_t length, RandomStream& rng,
                                  double low, double high) {
  require_length(length);
  require_finite_param("low", low);
  require_finite_param("high", high);
  if (!(high > low)) throw InvalidParam("high", "high must be greater than low");
  std::vector<double> out(length);
  for (auto& v : out) v = rng.uniform(low, high);
  return out;
}

std::vector<double> red_noise(std::size_t length, RandomStream& rng,
                              double sigma, double phi) {
  require_length(length);
  require_positive("sigma", sigma);
  if (!(phi > -1.0 && phi < 1.0)) {
    throw InvalidParam("phi", "phi must lie in (-1, 1)");
  }
  std::vector<double> out(length);
  out[0] = rng.normal(sigma);
  for (std::size_t t = 1; t < length; ++t) {
    out[t] = phi * out[t - 1] + rng.normal(sigma);
  }
  return out;
}

std::vector<double> random_walk(std::size_t length, RandomStream& rng,
                                double step_sigma) {
  require_length(length);
  require_positive("step_sigma", step_sigma);
  std::vector<double> out(length);
  double acc = 0.0;
  for (auto& v : out) {
    acc += rng.normal(step_sigma);
    v = acc;
  }
  return out;
}

std::vector<double> seasonal(std::size_t length, RandomStream& /*rng*/,
                             double period, double amplitude, double phase) {
  require_length(length);
  require_positive("period", period);
  require_finite_param("amplitude", amplitude);
  require_finite_param("phase", phase);
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    out[t] = amplitude * std::sin(2.0 * std::numbers::pi *
                                      static_cast<double>(t) / period +
                                  phase);
  }
  return out;
}

std::vector<double> trend(std::size_t length, RandomStream& /*rng*/,
                          double slope, double intercept) {
  require_length(length);
  require_finite_param("slope", slope);
  require_finite_param("intercept", intercept);
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    out[t] = intercept + slope * static_cast<double>(t);
  }
  return out;
}

std::vector<double> peak(std::size_t length, RandomStream& /*rng*/,
                         double amplitude) {
  require_length(length);
  require_finite_param("amplitude", amplitude);
  return triangle(length, amplitude);
}

std::vector<double> trough(std::size_t length, RandomStream& /*rng*/,
                           double amplitude) {
  require_length(length);
  require_finite_param("amplitude", amplitude);
  auto out = triangle(length, amplitude);
  for (auto& v : out) v = -v;
  return out;
}

std::vector<double> gaussian_pulse(std::size_t length, RandomStream& /*rng*/,
                                   double amplitude, double width_fraction) {
  require_length(length);
  require_finite_param("amplitude", amplitude);
  if (!(width_fraction > 0.0 && width_fraction <= 1.0)) {
    throw InvalidParam("width_fraction", "width_fraction must lie in (0, 1]");
  }
  const double center = static_cast<double>(length - 1) / 2.0;
  const double sigma = width_fraction * static_cast<double>(length);
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const double d = static_cast<double>(t) - center;
    out[t] = amplitude * std::exp(-(d * d) / (2.0 * sigma * sigma));
  }
  return out;
}

// ---------------------------------------------------------------------------
// BoundGenerator

BoundGenerator::BoundGenerator(std::shared_ptr<const GeneratorInfo> info,
                               ParamMap params)
    : info_(std::move(info)), params_(std::move(params)) {}

std::vector<double> BoundGenerator::operator()(std::size_t length,
                                               RandomStream& rng) const {
  auto out = info_->fn(length, rng, params_);
  if (out.size() != length) {
    throw GeneratorContractViolation(
        "generator '" + info_->name + "' returned " +
        std::to_string(out.size()) + " values, expected " +
        std::to_string(length));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      throw GeneratorContractViolation("generator '" + info_->name +
                                       "' returned a non-finite value at " +
                                       std::to_string(i));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// GeneratorRegistry

GeneratorRegistry::GeneratorRegistry(const GeneratorRegistry& other) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
}

GeneratorRegistry& GeneratorRegistry::operator=(const GeneratorRegistry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  entries_ = other.entries_;
  return *this;
}

GeneratorRegistry GeneratorRegistry::with_builtins() {
  GeneratorRegistry registry;
  add_builtins(registry);
  return registry;
}

GeneratorRegistry& GeneratorRegistry::global() {
  static GeneratorRegistry instance = with_builtins();
  return instance;
}

void GeneratorRegistry::register_generator(
    const std::string& name, GeneratorFn fn,
    const std::vector<std::string>& required_params, RegisterOptions options) {
  GeneratorInfo info;
  info.name = name;
  info.fn = std::move(fn);
  info.role_hint = options.role_hint;
  for (const auto& p : required_params) {
    info.params.push_back({p, std::nullopt, nullptr});
  }
  for (const auto& [p, def] : options.optional_params) {
    info.params.push_back({p, def, nullptr});
  }
  register_generator(std::move(info), options.overwrite);
}

void GeneratorRegistry::register_generator(GeneratorInfo info, bool overwrite) {
  if (info.name.empty()) {
    throw InvalidParam("name", "generator name must not be empty");
  }
  if (!info.fn) {
    throw InvalidParam("fn", "generator '" + info.name + "' has no function");
  }
  std::unique_lock lock(mutex_);
  if (!overwrite && entries_.contains(info.name)) {
    throw DuplicateName("generator '" + info.name + "' is already registered");
  }
  auto key = info.name;
  entries_[key] = std::make_shared<const GeneratorInfo>(std::move(info));
}

std::shared_ptr<const GeneratorInfo> GeneratorRegistry::find(
    std::string_view name) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : it->second;
}

ParamMap GeneratorRegistry::complete_params(const GeneratorSpec& spec) const {
  return resolve(spec).params();
}

BoundGenerator GeneratorRegistry::resolve(const GeneratorSpec& spec) const {
  auto info = find(spec.kind);
  if (!info) {
    std::string msg = "unknown generator '" + spec.kind + "'";
    const auto near = suggestions(spec.kind);
    if (!near.empty()) {
      msg += "; did you mean ";
      for (std::size_t i = 0; i < near.size(); ++i) {
        msg += (i ? ", '" : "'") + near[i] + "'";
      }
      msg += "?";
    }
    throw UnknownGenerator(msg);
  }

  for (const auto& [name, value] : spec.params) {
    const bool known = std::ranges::any_of(
        info->params, [&](const ParamDef& d) { return d.name == name; });
    if (!known) {
      throw InvalidParam(name, "generator '" + spec.kind +
                                   "' has no parameter '" + name + "'");
    }
  }

  ParamMap bound;
  for (const auto& def : info->params) {
    const auto it = spec.params.find(def.name);
    double value = 0.0;
    if (it != spec.params.end()) {
      value = it->second;
    } else if (def.default_value) {
      value = *def.default_value;
    } else {
      throw MissingParam(def.name, "generator '" + spec.kind +
                                       "' requires parameter '" + def.name +
                                       "'");
    }
    if (def.check) {
      if (auto err = def.check(value)) {
        std::ostringstream os;
        os << spec.kind << "." << def.name << " " << *err << ", got " << value;
        throw InvalidParam(def.name, os.str());
      }
    }
    bound.emplace(def.name, value);
  }
  if (info->cross_check) info->cross_check(bound);
  return BoundGenerator(std::move(info), std::move(bound));
}

bool GeneratorRegistry::contains(std::string_view name) const {
  return find(name) != nullptr;
}

std::vector<std::string> GeneratorRegistry::param_names(std::string_view name) const {
  const auto info = find(name);
  if (!info) throw UnknownGenerator("unknown generator kind '" + std::string(name) + "'");
  std::vector<std::string> out;
  for (const auto& def : info->params) out.push_back(def.name);
  return out;
}

std::vector<std::string> GeneratorRegistry::names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

std::vector<std::string> GeneratorRegistry::suggestions(
    std::string_view name) const {
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (auto& candidate : names()) {
    const auto d = edit_distance(name, candidate);
    const std::size_t limit = std::max<std::size_t>(2, candidate.size() / 4);
    if (d <= limit) scored.emplace_back(d, std::move(candidate));
  }
  std::ranges::sort(scored);
  std::vector<std::string> out;
  for (auto& [_, s] : scored) out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Spec constructors

namespace gen {
GeneratorSpec gaussian_noise(double sigma) {
  return {"gaussian_noise", {{"sigma", sigma}}};
}
GeneratorSpec uniform_noise(double low, double high) {
  return {"uniform_noise", {{"low", low}, {"high", high}}};
}
GeneratorSpec red_noise(double sigma) { return {"red_noise", {{"sigma", sigma}}}; }
GeneratorSpec red_noise(double sigma, double phi) {
  return {"red_noise", {{"sigma", sigma}, {"phi", phi}}};
}
GeneratorSpec random_walk(double step_sigma) {
  return {"random_walk", {{"step_sigma", step_sigma}}};
}
GeneratorSpec seasonal(double period, double amplitude) {
  return {"seasonal", {{"period", period}, {"amplitude", amplitude}}};
}
GeneratorSpec seasonal(double period, double amplitude, double phase) {
  return {"seasonal",
          {{"period", period}, {"amplitude", amplitude}, {"phase", phase}}};
}
GeneratorSpec trend(double slope) { return {"trend", {{"slope", slope}}}; }
GeneratorSpec trend(double slope, double intercept) {
  return {"trend", {{"slope", slope}, {"intercept", intercept}}};
}
GeneratorSpec peak(double amplitude) { return {"peak", {{"amplitude", amplitude}}}; }
GeneratorSpec trough(double amplitude) {
  return {"trough", {{"amplitude", amplitude}}};
}
GeneratorSpec gaussian_pulse(double amplitude) {
  return {"gaussian_pulse", {{"amplitude", amplitude}}};
}
GeneratorSpec gaussian_pulse(double amplitude, double width_fraction) {
  return {"gaussian_pulse",
          {{"amplitude", amplitude}, {"width_fraction", width_fraction}}};
}
}  // namespace gen

}  // namespace tsloc
