#include "tsloc/dataset.hpp"

#include <algorithm>

namespace tsloc {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::kZScore:
      return "zscore";
    case Normalization::kNone:
      return "none";
  }
  return "unknown";
}

std::optional<Normalization> parse_normalization(std::string_view text) {
  if (text == "zscore") return Normalization::kZScore;
  if (text == "none") return Normalization::kNone;
  return std::nullopt;
}

Dataset::Dataset(TimeSeriesTensor x, std::vector<std::int64_t> y,
                 GroundTruthMask mask, std::optional<Components> components,
                 DatasetMeta meta)
    : x_(std::move(x)),
      y_(std::move(y)),
      mask_(std::move(mask)),
      components_(std::move(components)),
      meta_(std::move(meta)) {
  validate_shapes(x_, mask_);
  if (y_.size() != x_.shape().samples) {
    throw ShapeMismatch("y has " + std::to_string(y_.size()) +
                        " labels but X has " +
                        std::to_string(x_.shape().samples) + " samples");
  }
  require_finite(x_, "X");
  require_binary(mask_);

  if (meta_.n_classes < 1) {
    throw Error("n_classes must be positive");
  }
  if (static_cast<std::size_t>(meta_.n_classes) != meta_.class_labels.size()) {
    throw Error("n_classes does not match the number of class labels");
  }
  if (std::adjacent_find(meta_.class_labels.begin(), meta_.class_labels.end(),
                         [](auto a, auto b) { return a >= b; }) !=
      meta_.class_labels.end()) {
    throw Error("class labels must be strictly ascending");
  }
  for (const auto label : y_) {
    if (label < 0 || label >= meta_.n_classes) {
      throw Error("label " + std::to_string(label) + " outside [0, " +
                  std::to_string(meta_.n_classes) + ")");
    }
  }

  if (components_) {
    validate_shapes(components_->signal, x_);
    validate_shapes(components_->feature, x_);
    require_finite(components_->signal, "signal component");
    require_finite(components_->feature, "feature component");
    const auto f = components_->feature.values();
    const auto m = mask_.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (m[i] == 0 && f[i] != 0.0) {
        throw Error("feature component is non-zero outside the mask at flat "
                    "index " + std::to_string(i));
      }
    }
  }
}

Dataset permute_samples(const Dataset& ds, const std::vector<std::size_t>& order) {
  const Shape shape = ds.shape();
  if (order.size() != shape.samples) {
    throw ShapeMismatch("permutation length does not match sample count");
  }
  std::vector<bool> seen(order.size(), false);
  for (const auto idx : order) {
    if (idx >= order.size() || seen[idx]) {
      throw Error("sample order is not a permutation");
    }
    seen[idx] = true;
  }

  auto gather = [&](const auto& src) {
    std::remove_cvref_t<decltype(src)> out(shape);
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::ranges::copy(src.sample(order[i]), out.sample(i).begin());
    }
    return out;
  };

  std::vector<std::int64_t> y(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) y[i] = ds.y()[order[i]];

  std::optional<Components> comps;
  if (ds.components()) {
    comps = Components{gather(ds.components()->signal),
                       gather(ds.components()->feature)};
  }
  return Dataset(gather(ds.X()), std::move(y), gather(ds.mask()),
                 std::move(comps), ds.meta());
}

}  // namespace tsloc
