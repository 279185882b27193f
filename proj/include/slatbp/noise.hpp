#pragma once

#include <vector>

#include "slatbp/geometry.hpp"

namespace slatbp {

/// IMU velocity noise: Gaussian measurement noise of scale `noise_sigma`
/// plus cell-quantization noise uniform on
/// (-quantization_length/sample_interval, +quantization_length/sample_interval).
struct ImuModel {
  double noise_sigma = 0.0;          // m/s
  double quantization_length = 0.0;  // m
  double sample_interval = 0.0;      // s

  void validate() const;
};

/// One Gaussian component of the wall-NLOS ranging error mixture.
struct GmComponent {
  double weight = 0.0;
  double mean = 0.0;   // m
  double sigma = 0.0;  // m
};

/// Ranging measurement noise: a LOS/NLOS/obstacle mixture convolved with the
/// cell-quantization noise uniform on (0, quantization_length*sqrt(3)).
struct RangingNoiseModel {
  double p_los = 0.0;
  double p_nlos = 0.0;
  double p_obs = 0.0;
  double los_sigma = 0.0;                 // m
  std::vector<GmComponent> nlos_mixture;  // wall-NLOS components
  double max_obstacle_error = 0.0;        // m, upper end of the obstacle uniform
  double quantization_length = 0.0;       // m

  void validate() const;
};

/// Density of the total IMU noise (measurement + quantization), unnormalized:
/// the value is the Gaussian-CDF difference across the quantization window,
/// so it integrates to 2*quantization_length/sample_interval rather than 1.
double imu_total_noise_pdf(const ImuModel& model, double u);

/// Transition weight for a target move given the measured velocity: the
/// product over the three dimensions of imu_total_noise_pdf at the residual
/// between measured and implied velocity.
double dynamic_weight(const ImuModel& model, const Vec3& velocity, const Vec3& position,
                      const Vec3& previous_position);

/// Convolution of Unif(0, d_quant*sqrt(3)) with Unif(0, max_error): a
/// trapezoid rising on (0, d_quant*sqrt(3)), flat at 1/max_error up to
/// max_error, falling back to zero at d_quant*sqrt(3) + max_error.
double obstacle_trapezoid_pdf(double d_quant, double max_error, double w);

/// Density of the total ranging noise (mixture convolved with quantization).
/// A proper density: nonnegative, integrates to 1.
double ranging_total_noise_pdf(const RangingNoiseModel& model, double w);

/// Likelihood of a bias-corrected distance measurement given the cells of the
/// target and the sensor: the total-noise density at the range residual.
double likelihood(const RangingNoiseModel& model, const CellMap& map, double measured_distance,
                  CellId target_cell, CellId sensor_cell);

}  // namespace slatbp
