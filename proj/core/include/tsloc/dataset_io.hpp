#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tsloc/dataset.hpp"

namespace tsloc {

// Dataset directory layout:
//   X.npy        f8 (samples, dims, timesteps)
//   y.npy        i8 (samples,)
//   mask.npy     u1 (samples, dims, timesteps)
//   meta.json    DatasetMeta
//   signal.npy   f8, optional; present together with feature.npy
//   feature.npy  f8, optional
inline constexpr int kDatasetFormatVersion = 1;

// Creates `dir` if needed. Stale component files are removed when `ds` has
// no components. Throws IoError.
void write_dataset(const Dataset& ds, const std::filesystem::path& dir);

// Throws FormatError (missing file, bad contents), ShapeMismatch
// (inconsistent files) or IoError.
Dataset read_dataset(const std::filesystem::path& dir);

std::string meta_to_json(const DatasetMeta& meta);
DatasetMeta meta_from_json(const std::string& text);

// Loads an attribution array from an .npy file as a (samples, dims,
// timesteps) tensor. Any numeric dtype is widened to f8; a 2-D array is
// read as (samples, timesteps) with a single channel.
TimeSeriesTensor read_attributions(const std::filesystem::path& path);

enum class ReportFormat { kJson, kCsv };

// JSON: {metric: {mean, n_excluded, normalized, per_sample, sample_indices}}
// with sorted keys. CSV: header "metric,field,sample,value", one "score" row
// per scored sample followed by "mean", "n_excluded" and "normalized" rows.
std::string render_metrics_report(const std::map<std::string, MetricResult>& results,
                                  ReportFormat format);
void write_metrics_report(const std::map<std::string, MetricResult>& results,
                          const std::filesystem::path& path, ReportFormat format);

}  // namespace tsloc
