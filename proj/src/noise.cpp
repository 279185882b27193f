#include "slatbp/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace slatbp {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Phi(a; 0, sigma) - Phi(b; 0, sigma), a >= b, clamped at zero. When the
// window sits entirely in one tail the erf difference rounds to 0 even
// though the true value is positive; the erfc forms keep the tails
// representable down to the underflow threshold, which the engine relies on
// (a likelihood that is positive everywhere cannot collapse a belief).
double gaussian_cdf_difference(double a, double b, double sigma) {
  const double sa = a / (sigma * M_SQRT2);
  const double sb = b / (sigma * M_SQRT2);
  double d;
  if (sb >= 0.0) {
    d = 0.5 * (std::erfc(sb) - std::erfc(sa));
  } else if (sa <= 0.0) {
    d = 0.5 * (std::erfc(-sa) - std::erfc(-sb));
  } else {
    d = 0.5 * (std::erf(sa) - std::erf(sb));
  }
  return d > 0.0 ? d : 0.0;
}

}  // namespace

void ImuModel::validate() const {
  if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma))
    throw std::invalid_argument("imu model: noise sigma must be positive");
  if (!(quantization_length >= 0.0) || !std::isfinite(quantization_length))
    throw std::invalid_argument("imu model: quantization length must be nonnegative");
  if (!(sample_interval > 0.0) || !std::isfinite(sample_interval))
    throw std::invalid_argument("imu model: sample interval must be positive");
}

void RangingNoiseModel::validate() const {
  if (p_los < 0.0 || p_nlos < 0.0 || p_obs < 0.0)
    throw std::invalid_argument("ranging model: mixture probabilities must be nonnegative");
  if (std::abs(p_los + p_nlos + p_obs - 1.0) > 1e-12)
    throw std::invalid_argument("ranging model: mixture probabilities must sum to 1");
  if (!(los_sigma > 0.0) || !std::isfinite(los_sigma))
    throw std::invalid_argument("ranging model: LOS sigma must be positive");
  if (!(quantization_length > 0.0) || !std::isfinite(quantization_length))
    throw std::invalid_argument("ranging model: quantization length must be positive");
  if (!(max_obstacle_error > quantization_length * kSqrt3))
    throw std::invalid_argument(
        "ranging model: max obstacle error must exceed quantization_length*sqrt(3)");
  if (p_nlos > 0.0 || !nlos_mixture.empty()) {
    if (nlos_mixture.empty())
      throw std::invalid_argument("ranging model: NLOS mixture is empty");
    double total = 0.0;
    for (const GmComponent& c : nlos_mixture) {
      if (c.weight < 0.0 || !(c.sigma > 0.0) || !std::isfinite(c.mean))
        throw std::invalid_argument("ranging model: invalid NLOS component");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("ranging model: NLOS weights must sum to 1");
  }
}

double imu_total_noise_pdf(const ImuModel& model, double u) {
  const double half_span = model.quantization_length / model.sample_interval;
  return gaussian_cdf_difference(u + half_span, u - half_span, model.noise_sigma);
}

double dynamic_weight(const ImuModel& model, const Vec3& velocity, const Vec3& position,
                      const Vec3& previous_position) {
  const Vec3 implied = (1.0 / model.sample_interval) * (position - previous_position);
  return imu_total_noise_pdf(model, velocity.x - implied.x) *
         imu_total_noise_pdf(model, velocity.y - implied.y) *
         imu_total_noise_pdf(model, velocity.z - implied.z);
}

double obstacle_trapezoid_pdf(double d_quant, double max_error, double w) {
  const double ramp = d_quant * kSqrt3;
  if (!(ramp > 0.0) || !(max_error > ramp))
    throw std::invalid_argument("trapezoid: requires max_error > quantization*sqrt(3) > 0");
  const double upper = ramp + max_error;
  if (w <= 0.0 || w >= upper) return 0.0;
  if (w < ramp) return w / (max_error * ramp);
  if (w <= max_error) return 1.0 / max_error;
  return (upper - w) / (max_error * ramp);
}

double ranging_total_noise_pdf(const RangingNoiseModel& model, double w) {
  const double ramp = model.quantization_length * kSqrt3;
  double p = 0.0;
  if (model.p_los > 0.0) {
    p += model.p_los / ramp * gaussian_cdf_difference(w, w - ramp, model.los_sigma);
  }
  if (model.p_nlos > 0.0) {
    double nlos = 0.0;
    for (const GmComponent& c : model.nlos_mixture) {
      nlos += c.weight * gaussian_cdf_difference(w - c.mean, w - ramp - c.mean, c.sigma);
    }
    p += model.p_nlos / ramp * nlos;
  }
  if (model.p_obs > 0.0) {
    p += model.p_obs * obstacle_trapezoid_pdf(model.quantization_length, model.max_obstacle_error, w);
  }
  return p;
}

double likelihood(const RangingNoiseModel& model, const CellMap& map, double measured_distance,
                  CellId target_cell, CellId sensor_cell) {
  if (!std::isfinite(measured_distance))
    throw std::invalid_argument("likelihood: measured distance must be finite");
  return ranging_total_noise_pdf(model,
                                 measured_distance - cell_distance(map, target_cell, sensor_cell));
}

}  // namespace slatbp
