#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slatbp/noise.hpp"

namespace slatbp {

struct GmFitOptions {
  std::size_t max_iterations = 100;
  double tolerance = 1e-6;   // relative change in within-cluster squared distance
  double sigma_floor = 0.05;  // m
};

/// Fits a Gaussian mixture to scalar samples with k-means. Seeding is
/// deterministic farthest-point: the first center is the sample nearest the
/// global mean, each further center the sample farthest from the existing
/// ones. Components are returned sorted by mean; weights sum to 1 and every
/// sigma is at least the configured floor.
std::vector<GmComponent> fit_gm(std::span<const double> samples, std::size_t n_components,
                                const GmFitOptions& options = {});

}  // namespace slatbp
