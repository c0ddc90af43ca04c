#include "tsloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

#include "tsloc/errors.hpp"

namespace tsloc {
namespace {

constexpr double kMinStd = 1e-12;

std::size_t count_positive(std::span<const std::uint8_t> m) {
  return static_cast<std::size_t>(std::ranges::count_if(m, [](auto v) { return v != 0; }));
}

// Attribution scores after optional abs preprocessing, shared by all metrics
// of one evaluation.
class Scores {
 public:
  Scores(const TimeSeriesTensor& attr, const Dataset& ds, bool use_abs)
      : attr_(attr) {
    validate_shapes(attr.shape(), ds.shape());
    require_finite(attr, "attributions");
    if (use_abs) {
      abs_.resize(attr.size());
      std::ranges::transform(attr.values(), abs_.begin(),
                             [](double v) { return std::abs(v); });
    }
  }

  std::span<const double> sample(std::size_t i) const {
    if (abs_.empty()) return attr_.sample(i);
    const auto per = attr_.shape().per_sample();
    return std::span<const double>(abs_).subspan(i * per, per);
  }

 private:
  const TimeSeriesTensor& attr_;
  std::vector<double> abs_;
};

// Kernel returns nullopt for a degenerate sample.
using SampleKernel = std::function<std::optional<double>(
    std::span<const double>, std::span<const std::uint8_t>)>;

MetricResult run(std::string name, const Dataset& ds, const Scores& scores,
                 const EvalOptions& opts, bool normalized,
                 const SampleKernel& kernel) {
  MetricResult result;
  result.metric_name = std::move(name);
  result.normalized = normalized;
  const auto n = ds.n_samples();
  for (std::size_t i = 0; i < n; ++i) {
    const auto score = kernel(scores.sample(i), ds.mask().sample(i));
    if (!score) {
      if (!opts.exclude_degenerate) {
        throw Error(result.metric_name + ": sample " + std::to_string(i) +
                    " is degenerate");
      }
      ++result.n_excluded;
      continue;
    }
    result.per_sample.push_back(*score);
    result.sample_indices.push_back(i);
  }
  if (result.per_sample.empty()) {
    throw AllSamplesDegenerate(result.metric_name + ": all " + std::to_string(n) +
                               " samples are degenerate");
  }
  result.mean = std::accumulate(result.per_sample.begin(),
                                result.per_sample.end(), 0.0) /
                static_cast<double>(result.per_sample.size());
  if (result.n_excluded > 0) {
    result.warnings.push_back(result.metric_name + ": excluded " +
                              std::to_string(result.n_excluded) + " of " +
                              std::to_string(n) + " samples as degenerate");
  }
  return result;
}

MetricResult auc_roc_impl(const Scores& sc, const Dataset& ds,
                          const EvalOptions& opts) {
  return run("auc_roc", ds, sc, opts, opts.normalize,
             [&](auto s, auto m) -> std::optional<double> {
               const auto pos = count_positive(m);
               if (pos == 0 || pos == m.size()) return std::nullopt;
               const double auc = kernels::auc_roc(s, m);
               return opts.normalize ? (auc - 0.5) / (1.0 - 0.5) : auc;
             });
}

MetricResult auc_pr_impl(const Scores& sc, const Dataset& ds,
                         const EvalOptions& opts) {
  return run("auc_pr", ds, sc, opts, opts.normalize,
             [&](auto s, auto m) -> std::optional<double> {
               const auto pos = count_positive(m);
               if (pos == 0) return std::nullopt;
               if (opts.normalize && pos == m.size()) return std::nullopt;
               const double ap = kernels::average_precision(s, m);
               if (!opts.normalize) return ap;
               const double p = static_cast<double>(pos) / static_cast<double>(m.size());
               return (ap - p) / (1.0 - p);
             });
}

MetricResult rma_impl(const Scores& sc, const Dataset& ds, const EvalOptions& opts) {
  return run("relevance_mass", ds, sc, opts, false,
             [](auto s, auto m) -> std::optional<double> {
               if (count_positive(m) == 0) return std::nullopt;
               const double total = std::accumulate(s.begin(), s.end(), 0.0);
               if (total == 0.0) return std::nullopt;
               return kernels::relevance_mass(s, m);
             });
}

MetricResult rra_impl(const Scores& sc, const Dataset& ds, const EvalOptions& opts) {
  return run("relevance_rank", ds, sc, opts, false,
             [](auto s, auto m) -> std::optional<double> {
               if (count_positive(m) == 0) return std::nullopt;
               return kernels::relevance_rank(s, m);
             });
}

MetricResult pg_impl(const Scores& sc, const Dataset& ds, const EvalOptions& opts) {
  return run("pointing_game", ds, sc, opts, false,
             [&](auto s, auto m) -> std::optional<double> {
               if (count_positive(m) == 0) return std::nullopt;
               return kernels::pointing_game(s, m, opts.pointing_any_hit);
             });
}

MetricResult nac_impl(const Scores& sc, const Dataset& ds, const EvalOptions& opts) {
  return run("nac", ds, sc, opts, false,
             [](auto s, auto m) -> std::optional<double> {
               if (count_positive(m) == 0) return std::nullopt;
               return kernels::nac(s, m);
             });
}

template <typename PointError>
MetricResult pointwise_error(std::string name, const Scores& sc,
                             const Dataset& ds, PointError err) {
  return run(std::move(name), ds, sc, EvalOptions{}, false,
             [&](auto s, auto m) -> std::optional<double> {
               double acc = 0.0;
               for (std::size_t i = 0; i < s.size(); ++i) {
                 acc += err(s[i] - static_cast<double>(m[i]));
               }
               return acc / static_cast<double>(s.size());
             });
}

MetricResult mae_impl(const Scores& sc, const Dataset& ds) {
  return pointwise_error("mae", sc, ds, [](double d) { return std::abs(d); });
}

MetricResult mse_impl(const Scores& sc, const Dataset& ds) {
  return pointwise_error("mse", sc, ds, [](double d) { return d * d; });
}

}  // namespace

// ---------------------------------------------------------------------------
// kernels

namespace kernels {

double auc_roc(std::span<const double> s, std::span<const std::uint8_t> m) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::sort(order, [&](auto a, auto b) { return s[a] < s[b]; });

  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && s[order[j]] == s[order[i]]) ++j;
    // 1-based ranks i+1..j share their average.
    const double midrank = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (m[order[k]] != 0) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double pos = static_cast<double>(count_positive(m));
  const double neg = static_cast<double>(n) - pos;
  const double u = positive_rank_sum - pos * (pos + 1.0) / 2.0;
  return u / (pos * neg);
}

double average_precision(std::span<const double> s,
                         std::span<const std::uint8_t> m) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::sort(order, [&](auto a, auto b) { return s[a] > s[b]; });

  const double total_pos = static_cast<double>(count_positive(m));
  double ap = 0.0;
  std::size_t seen = 0;
  std::size_t tp = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    std::size_t group_tp = 0;
    while (j < n && s[order[j]] == s[order[i]]) {
      group_tp += m[order[j]] != 0 ? 1 : 0;
      ++j;
    }
    seen += j - i;
    tp += group_tp;
    if (group_tp > 0) {
      const double recall_step = static_cast<double>(group_tp) / total_pos;
      const double precision = static_cast<double>(tp) / static_cast<double>(seen);
      ap += recall_step * precision;
    }
    i = j;
  }
  return ap;
}

double relevance_mass(std::span<const double> s, std::span<const std::uint8_t> m) {
  double inside = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += s[i];
    if (m[i] != 0) inside += s[i];
  }
  return inside / total;
}

double relevance_rank(std::span<const double> s, std::span<const std::uint8_t> m) {
  const std::size_t k = count_positive(m);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::partial_sort(order, order.begin() + static_cast<std::ptrdiff_t>(k),
                            [&](auto a, auto b) {
                              return s[a] > s[b] || (s[a] == s[b] && a < b);
                            });
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) hits += m[order[i]] != 0 ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(k);
}

double pointing_game(std::span<const double> s, std::span<const std::uint8_t> m,
                     bool any_hit) {
  const auto top = std::ranges::max_element(s);  // first (lowest) maximum
  if (!any_hit) {
    return m[static_cast<std::size_t>(top - s.begin())] != 0 ? 1.0 : 0.0;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == *top && m[i] != 0) return 1.0;
  }
  return 0.0;
}

double nac(std::span<const double> s, std::span<const std::uint8_t> m) {
  const double n = static_cast<double>(s.size());
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : s) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (sd < kMinStd) return 0.0;
  double acc = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (m[i] == 0) continue;
    acc += (s[i] - mean) / sd;
    ++k;
  }
  return acc / static_cast<double>(k);
}

}  // namespace kernels

// ---------------------------------------------------------------------------
// Public entry points

std::string canonical_metric_name(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> aliases = {
      {"auc_roc_score", "auc_roc"},
      {"auc_pr_score", "auc_pr"},
      {"relevance_mass_accuracy", "relevance_mass"},
      {"relevance_rank_accuracy", "relevance_rank"},
      {"nac_score", "nac"},
      {"mean_absolute_error", "mae"},
      {"mean_squared_error", "mse"},
  };
  for (const auto canonical : kMetricNames) {
    if (canonical == name) return std::string(canonical);
  }
  if (auto it = aliases.find(name); it != aliases.end()) return it->second;
  throw UnknownMetric("unknown metric '" + std::string(name) + "'");
}

MetricResult auc_roc_score(const TimeSeriesTensor& attr, const Dataset& ds,
                           const EvalOptions& opts) {
  return auc_roc_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult auc_pr_score(const TimeSeriesTensor& attr, const Dataset& ds,
                          const EvalOptions& opts) {
  return auc_pr_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult relevance_mass_accuracy(const TimeSeriesTensor& attr,
                                     const Dataset& ds, const EvalOptions& opts) {
  return rma_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult relevance_rank_accuracy(const TimeSeriesTensor& attr,
                                     const Dataset& ds, const EvalOptions& opts) {
  return rra_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult pointing_game(const TimeSeriesTensor& attr, const Dataset& ds,
                           const EvalOptions& opts) {
  return pg_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult nac_score(const TimeSeriesTensor& attr, const Dataset& ds,
                       const EvalOptions& opts) {
  return nac_impl(Scores(attr, ds, opts.use_abs), ds, opts);
}

MetricResult mean_absolute_error(const TimeSeriesTensor& attr, const Dataset& ds) {
  return mae_impl(Scores(attr, ds, false), ds);
}

MetricResult mean_squared_error(const TimeSeriesTensor& attr, const Dataset& ds) {
  return mse_impl(Scores(attr, ds, false), ds);
}

std::map<std::string, MetricResult> evaluate_all(
    const TimeSeriesTensor& attr, const Dataset& ds, const EvalOptions& opts,
    const std::vector<std::string>& metric_names) {
  std::vector<std::string> names;
  for (const auto& n : metric_names) names.push_back(canonical_metric_name(n));

  const Scores raw(attr, ds, false);
  std::optional<Scores> ranked;
  if (opts.use_abs) ranked.emplace(attr, ds, true);
  const Scores& rs = ranked ? *ranked : raw;

  std::map<std::string, MetricResult> out;
  for (const auto& name : names) {
    if (out.contains(name)) continue;
    MetricResult r;
    if (name == "auc_roc") r = auc_roc_impl(rs, ds, opts);
    else if (name == "auc_pr") r = auc_pr_impl(rs, ds, opts);
    else if (name == "relevance_mass") r = rma_impl(rs, ds, opts);
    else if (name == "relevance_rank") r = rra_impl(rs, ds, opts);
    else if (name == "pointing_game") r = pg_impl(rs, ds, opts);
    else if (name == "nac") r = nac_impl(rs, ds, opts);
    else if (name == "mae") r = mae_impl(raw, ds);
    else r = mse_impl(raw, ds);
    out.emplace(name, std::move(r));
  }
  return out;
}

}  // namespace tsloc
