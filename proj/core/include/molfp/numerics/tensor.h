//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_TENSOR_H_
#define MOLFP_NUMERICS_TENSOR_H_

#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "molfp/error.h"

namespace molfp::numerics {

using Shape = std::vector<std::size_t>;

inline std::size_t shape_numel(const Shape &shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t { 1 },
                         std::multiplies<> {});
}

inline std::string shape_string(const Shape &shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i)
    os << (i ? "," : "") << shape[i];
  os << ']';
  return os.str();
}

class ShapeError: public Error {
public:
  explicit ShapeError(const std::string &message)
      : Error("numerics.shape", message) { }
};

// Dense row-major array. Value type: copies are deep.
template <class T>
class Tensor {
public:
  using value_type = T;

  Tensor() = default;

  explicit Tensor(Shape shape, T fill = T(0))
      : shape_(std::move(shape)), data_(shape_numel(shape_), fill) { }

  Tensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_numel(shape_))
      throw ShapeError("data length " + std::to_string(data_.size())
                       + " does not match shape " + shape_string(shape_));
  }

  static Tensor zeros_like(const Tensor &other) { return Tensor(other.shape_); }

  const Shape &shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t i) const { return shape_.at(i); }
  std::size_t numel() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  // Last extent, and the number of rows of that length.
  std::size_t cols() const noexcept { return shape_.empty() ? 1 : shape_.back(); }
  std::size_t rows() const noexcept {
    return cols() == 0 ? 0 : numel() / cols();
  }

  T *data() noexcept { return data_.data(); }
  const T *data() const noexcept { return data_.data(); }
  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  std::vector<T> &storage() noexcept { return data_; }
  const std::vector<T> &storage() const noexcept { return data_; }

  T &operator[](std::size_t i) { return data_[i]; }
  const T &operator[](std::size_t i) const { return data_[i]; }

  T &at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  const T &at(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
  }

  std::span<T> row(std::size_t r) {
    return std::span<T>(data_).subspan(r * cols(), cols());
  }
  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(data_).subspan(r * cols(), cols());
  }

  void reshape(Shape shape) {
    if (shape_numel(shape) != numel())
      throw ShapeError("cannot reshape " + shape_string(shape_) + " to "
                       + shape_string(shape));
    shape_ = std::move(shape);
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  template <class U>
  Tensor<U> cast() const {
    return Tensor<U>(shape_, std::vector<U>(data_.begin(), data_.end()));
  }

  bool operator==(const Tensor &) const = default;

private:
  Shape shape_;
  std::vector<T> data_;
};

}  // namespace molfp::numerics

#endif  // MOLFP_NUMERICS_TENSOR_H_
