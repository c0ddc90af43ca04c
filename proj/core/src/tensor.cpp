#include "tsloc/tensor.hpp"

#include <cmath>

namespace tsloc {

std::string to_string(const Shape& shape) {
  return "(" + std::to_string(shape.samples) + ", " +
         std::to_string(shape.dims) + ", " + std::to_string(shape.timesteps) +
         ")";
}

void validate_shapes(const Shape& a, const Shape& b) {
  if (a != b) {
    throw ShapeMismatch("shape mismatch: " + to_string(a) + " vs " +
                        to_string(b));
  }
}

void require_finite(const TimeSeriesTensor& tensor, const std::string& what) {
  const auto values = tensor.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NonFiniteValue(what + " has a non-finite value at flat index " +
                           std::to_string(i));
    }
  }
}

void require_binary(const GroundTruthMask& mask) {
  const auto values = mask.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 1) {
      throw Error("mask value " + std::to_string(values[i]) +
                  " at flat index " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

std::vector<Run> mask_runs(std::span<const std::uint8_t> slice) {
  std::vector<Run> runs;
  std::size_t t = 0;
  while (t < slice.size()) {
    if (slice[t] == 0) {
      ++t;
      continue;
    }
    Run run{t, 0};
    while (t < slice.size() && slice[t] != 0) {
      ++run.length;
      ++t;
    }
    runs.push_back(run);
  }
  return runs;
}

}  // namespace tsloc
