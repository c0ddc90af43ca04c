#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsloc/dataset.hpp"

namespace tsloc {

struct EvalOptions {
  // Take |attribution| before the ranking-style metrics (never for MAE/MSE).
  bool use_abs = true;
  // Rescale AUC-ROC / AUC-PR so chance maps to 0 and perfection to 1.
  bool normalize = false;
  // Degenerate samples are always excluded from the mean; turning this off
  // makes them an error instead.
  bool exclude_degenerate = true;
  // Pointing game counts a hit if any position attaining the maximum lies in
  // the ground truth, instead of only the lowest such index.
  bool pointing_any_hit = false;
};

// Canonical metric names, in reporting order.
inline constexpr std::string_view kMetricNames[] = {
    "auc_roc", "auc_pr", "relevance_mass", "relevance_rank",
    "pointing_game", "nac", "mae", "mse"};

// Maps a canonical name or its long alias (e.g. "auc_pr_score",
// "relevance_mass_accuracy", "mean_absolute_error") to the canonical name.
// Throws UnknownMetric.
std::string canonical_metric_name(std::string_view name);

// Every metric flattens each sample over (channels x timesteps), scores it,
// drops degenerate samples from the mean (counting them in n_excluded) and
// throws AllSamplesDegenerate when nothing is left. Attribution and dataset
// shapes must match exactly (ShapeMismatch otherwise).

// Midrank AUC: P(random positive outranks random negative), ties count 1/2.
// Degenerate unless the mask has both classes.
MetricResult auc_roc_score(const TimeSeriesTensor& attr, const Dataset& ds,
                           const EvalOptions& opts = {});

// Step-wise average precision with tied scores grouped into one threshold.
// Normalized: (AP - p) / (1 - p) where p is the sample's prevalence.
MetricResult auc_pr_score(const TimeSeriesTensor& attr, const Dataset& ds,
                          const EvalOptions& opts = {});

// Share of attribution mass inside the ground truth. Without use_abs the
// raw sums are used and the score is not confined to [0, 1].
MetricResult relevance_mass_accuracy(const TimeSeriesTensor& attr,
                                     const Dataset& ds,
                                     const EvalOptions& opts = {});

// Fraction of the K highest-scored positions (K = ground-truth size) that
// are ground truth; ties go to the lower flat index.
MetricResult relevance_rank_accuracy(const TimeSeriesTensor& attr,
                                     const Dataset& ds,
                                     const EvalOptions& opts = {});

MetricResult pointing_game(const TimeSeriesTensor& attr, const Dataset& ds,
                           const EvalOptions& opts = {});

// Mean z-scored attribution over ground-truth positions (population std).
// Zero-variance samples score 0 and are kept.
MetricResult nac_score(const TimeSeriesTensor& attr, const Dataset& ds,
                       const EvalOptions& opts = {});

MetricResult mean_absolute_error(const TimeSeriesTensor& attr,
                                 const Dataset& ds);
MetricResult mean_squared_error(const TimeSeriesTensor& attr,
                                const Dataset& ds);

// Runs each named metric (canonical names or aliases) and keys the results
// by canonical name.
std::map<std::string, MetricResult> evaluate_all(
    const TimeSeriesTensor& attr, const Dataset& ds, const EvalOptions& opts,
    const std::vector<std::string>& metric_names);

// Single-sample kernels over flattened vectors. They assume a non-degenerate
// input and apply no abs preprocessing; exposed for tests and benchmarks.
namespace kernels {
double auc_roc(std::span<const double> s, std::span<const std::uint8_t> m);
double average_precision(std::span<const double> s,
                         std::span<const std::uint8_t> m);
double relevance_mass(std::span<const double> s, std::span<const std::uint8_t> m);
double relevance_rank(std::span<const double> s, std::span<const std::uint8_t> m);
double pointing_game(std::span<const double> s, std::span<const std::uint8_t> m,
                     bool any_hit = false);
double nac(std::span<const double> s, std::span<const std::uint8_t> m);
}  // namespace kernels

}  // namespace tsloc
