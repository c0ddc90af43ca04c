#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsloc/tensor.hpp"

namespace tsloc {

enum class Normalization { kZScore, kNone };

std::string_view to_string(Normalization n);
// Accepts "zscore" and "none".
std::optional<Normalization> parse_normalization(std::string_view text);

struct DatasetMeta {
  std::int64_t n_classes = 0;
  std::vector<std::int64_t> class_labels;
  std::uint64_t random_state = 0;
  Normalization normalization = Normalization::kZScore;
  std::string config_fingerprint;
  std::string generator_catalog_version;
  // Number of (sample, channel) slices where two feature windows overlapped.
  std::uint64_t overlapping_windows = 0;
  // Canonical JSON of the originating config; empty when unknown.
  std::string config_json;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

// Background signal and feature tensors as they were before normalization.
struct Components {
  TimeSeriesTensor signal;
  TimeSeriesTensor feature;
  friend bool operator==(const Components&, const Components&) = default;
};

// Immutable once constructed. The constructor enforces every cross-field
// invariant, so holding a Dataset means the shapes, labels and mask agree.
class Dataset {
 public:
  Dataset(TimeSeriesTensor x, std::vector<std::int64_t> y, GroundTruthMask mask,
          std::optional<Components> components, DatasetMeta meta);

  const TimeSeriesTensor& X() const noexcept { return x_; }
  const std::vector<std::int64_t>& y() const noexcept { return y_; }
  const GroundTruthMask& mask() const noexcept { return mask_; }
  const std::optional<Components>& components() const noexcept {
    return components_;
  }
  const DatasetMeta& meta() const noexcept { return meta_; }
  const Shape& shape() const noexcept { return x_.shape(); }
  std::size_t n_samples() const noexcept { return x_.shape().samples; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  TimeSeriesTensor x_;
  std::vector<std::int64_t> y_;
  GroundTruthMask mask_;
  std::optional<Components> components_;
  DatasetMeta meta_;
};

// Reorders samples by `order` (a permutation of 0..n-1), carrying y, mask and
// components along.
Dataset permute_samples(const Dataset& ds, const std::vector<std::size_t>& order);

struct MetricResult {
  std::string metric_name;
  // One score per non-degenerate sample, in sample order.
  std::vector<double> per_sample;
  // Dataset index of each entry in per_sample.
  std::vector<std::size_t> sample_indices;
  double mean = 0.0;
  std::size_t n_excluded = 0;
  bool normalized = false;
  std::vector<std::string> warnings;
};

}  // namespace tsloc
