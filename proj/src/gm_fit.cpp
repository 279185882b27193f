#include "slatbp/gm_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace slatbp {

namespace {

std::vector<double> seed_centers(std::span<const double> samples, std::size_t k) {
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  std::vector<double> centers;
  centers.reserve(k);

  std::size_t first = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = std::abs(samples[i] - mean);
    if (d < best) {
      best = d;
      first = i;
    }
  }
  centers.push_back(samples[first]);

  while (centers.size() < k) {
    std::size_t farthest = 0;
    double far_dist = -1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (double c : centers) nearest = std::min(nearest, std::abs(samples[i] - c));
      if (nearest > far_dist) {
        far_dist = nearest;
        farthest = i;
      }
    }
    centers.push_back(samples[farthest]);
  }
  return centers;
}

}  // namespace

std::vector<GmComponent> fit_gm(std::span<const double> samples, std::size_t n_components,
                                const GmFitOptions& options) {
  if (samples.empty()) throw std::invalid_argument("fit_gm: no samples");
  if (n_components < 1 || n_components > samples.size())
    throw std::invalid_argument("fit_gm: component count must be in [1, sample count]");
  for (double s : samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("fit_gm: non-finite sample");
  }

  std::vector<double> centers = seed_centers(samples, n_components);
  std::vector<std::size_t> assignment(samples.size(), 0);
  double previous_inertia = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    // Assign: nearest center, ties to the lower index.
    double inertia = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < centers.size(); ++j) {
        const double d = std::abs(samples[i] - centers[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      assignment[i] = best;
      inertia += best_d * best_d;
    }

    // Update means; an emptied cluster is reseeded to the sample farthest
    // from its current center.
    std::vector<double> sums(n_components, 0.0);
    std::vector<std::size_t> counts(n_components, 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sums[assignment[i]] += samples[i];
      ++counts[assignment[i]];
    }
    for (std::size_t j = 0; j < n_components; ++j) {
      if (counts[j] > 0) {
        centers[j] = sums[j] / static_cast<double>(counts[j]);
      } else {
        std::size_t farthest = 0;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
          const double d = std::abs(samples[i] - centers[j]);
          if (d > far_dist) {
            far_dist = d;
            farthest = i;
          }
        }
        centers[j] = samples[farthest];
      }
    }

    if (previous_inertia < std::numeric_limits<double>::infinity()) {
      const double denom = std::max(previous_inertia, 1e-300);
      if (std::abs(previous_inertia - inertia) / denom < options.tolerance) break;
    }
    previous_inertia = inertia;
  }

  // Final assignment against the converged centers.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double d = std::abs(samples[i] - centers[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    assignment[i] = best;
  }

  std::vector<GmComponent> components(n_components);
  std::vector<std::size_t> counts(n_components, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) ++counts[assignment[i]];
  for (std::size_t j = 0; j < n_components; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (assignment[i] == j) mean += samples[i];
    }
    mean = counts[j] > 0 ? mean / static_cast<double>(counts[j]) : centers[j];
    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (assignment[i] == j) ss += (samples[i] - mean) * (samples[i] - mean);
    }
    const double sigma = counts[j] > 1 ? std::sqrt(ss / static_cast<double>(counts[j] - 1)) : 0.0;
    components[j] = {static_cast<double>(counts[j]) / static_cast<double>(samples.size()), mean,
                     std::max(sigma, options.sigma_floor)};
  }

  std::sort(components.begin(), components.end(),
            [](const GmComponent& a, const GmComponent& b) { return a.mean < b.mean; });
  return components;
}

}  // namespace slatbp
