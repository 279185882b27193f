#include "slatbp/pmf.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slatbp {

Pmf::Pmf(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("pmf: weights must be finite and nonnegative");
  }
}

double Pmf::sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

void Pmf::normalize() {
  const double s = sum();
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("pmf: cannot normalize, total weight is zero or non-finite");
  for (double& w : weights_) w /= s;
}

Pmf Pmf::normalized() const {
  Pmf out = *this;
  out.normalize();
  return out;
}

void Pmf::multiply(const Pmf& other) {
  if (other.size() != size()) throw std::invalid_argument("pmf: size mismatch in multiply");
  for (std::size_t c = 0; c < weights_.size(); ++c) weights_[c] *= other.weights_[c];
}

Pmf Pmf::uniform(std::size_t n_cells) {
  if (n_cells == 0) throw std::invalid_argument("pmf: empty support");
  return Pmf(std::vector<double>(n_cells, 1.0 / static_cast<double>(n_cells)));
}

Pmf Pmf::delta(std::size_t n_cells, CellId c) {
  if (c >= n_cells) throw std::invalid_argument("pmf: delta cell out of range");
  Pmf p(n_cells);
  p[c] = 1.0;
  return p;
}

}  // namespace slatbp
