#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsloc/errors.hpp"

namespace tsloc {

// Extents of a (samples, channels, timesteps) array.
struct Shape {
  std::size_t samples = 0;
  std::size_t dims = 0;
  std::size_t timesteps = 0;

  std::size_t size() const noexcept { return samples * dims * timesteps; }
  std::size_t per_sample() const noexcept { return dims * timesteps; }
  bool valid() const noexcept {
    return samples >= 1 && dims >= 1 && timesteps >= 1;
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

// Dense row-major rank-3 array. Element (s, c, t) lives at
// (s * dims + c) * timesteps + t.
template <typename T>
class Tensor3 {
 public:
  using value_type = T;

  Tensor3() = default;

  explicit Tensor3(Shape shape, T fill = T{})
      : shape_(check_extents(shape)), data_(shape.size(), fill) {}

  Tensor3(Shape shape, std::vector<T> values)
      : shape_(check_extents(shape)), data_(std::move(values)) {
    if (data_.size() != shape_.size()) {
      throw ShapeMismatch("tensor of shape " + to_string(shape_) + " needs " +
                          std::to_string(shape_.size()) + " values, got " +
                          std::to_string(data_.size()));
    }
  }

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t s, std::size_t c, std::size_t t) {
    return data_[index(s, c, t)];
  }
  const T& operator()(std::size_t s, std::size_t c, std::size_t t) const {
    return data_[index(s, c, t)];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  // All channels of one sample, flattened channel-major.
  std::span<T> sample(std::size_t s) {
    return std::span<T>(data_).subspan(s * shape_.per_sample(),
                                       shape_.per_sample());
  }
  std::span<const T> sample(std::size_t s) const {
    return std::span<const T>(data_).subspan(s * shape_.per_sample(),
                                             shape_.per_sample());
  }

  std::span<T> slice(std::size_t s, std::size_t c) {
    return std::span<T>(data_).subspan(index(s, c, 0), shape_.timesteps);
  }
  std::span<const T> slice(std::size_t s, std::size_t c) const {
    return std::span<const T>(data_).subspan(index(s, c, 0), shape_.timesteps);
  }

  const std::vector<T>& storage() const noexcept { return data_; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  static Shape check_extents(Shape shape) {
    if (!shape.valid()) {
      throw ShapeMismatch("every extent must be >= 1, got " + to_string(shape));
    }
    return shape;
  }

  std::size_t index(std::size_t s, std::size_t c, std::size_t t) const {
    return (s * shape_.dims + c) * shape_.timesteps + t;
  }

  Shape shape_{};
  std::vector<T> data_;
};

using TimeSeriesTensor = Tensor3<double>;
using GroundTruthMask = Tensor3<std::uint8_t>;

// Throws ShapeMismatch naming both shapes unless all three extents agree.
void validate_shapes(const Shape& a, const Shape& b);

template <typename A, typename B>
void validate_shapes(const Tensor3<A>& a, const Tensor3<B>& b) {
  validate_shapes(a.shape(), b.shape());
}

// Throws NonFiniteValue if any element is NaN or infinite. `what` names the
// tensor in the message.
void require_finite(const TimeSeriesTensor& tensor, const std::string& what);

// Throws if any mask element is outside {0, 1}.
void require_binary(const GroundTruthMask& mask);

// A contiguous run of ones inside a mask slice.
struct Run {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Run&, const Run&) = default;
};

std::vector<Run> mask_runs(std::span<const std::uint8_t> slice);

}  // namespace tsloc
