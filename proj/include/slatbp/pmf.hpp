#pragma once

#include <cstddef>
#include <vector>

#include "slatbp/geometry.hpp"

namespace slatbp {

/// A belief or message: one nonnegative weight per cell.
class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::size_t n_cells) : weights_(n_cells, 0.0) {}
  explicit Pmf(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](CellId c) const { return weights_[c]; }
  double& operator[](CellId c) { return weights_[c]; }
  const std::vector<double>& weights() const { return weights_; }

  double sum() const;
  /// Scales weights to sum to 1. Throws if the sum is zero or non-finite.
  void normalize();
  Pmf normalized() const;

  /// Pointwise product (used for belief updates). Sizes must match.
  void multiply(const Pmf& other);

  static Pmf uniform(std::size_t n_cells);
  static Pmf delta(std::size_t n_cells, CellId c);

  bool operator==(const Pmf& other) const = default;

 private:
  std::vector<double> weights_;
};

}  // namespace slatbp
