#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double simpson(const std::function<double(double)>& f, double a, double b, double step_hint) {
  const double length = b - a;
  if (!(length > 0.0)) return 0.0;
  std::size_t n = static_cast<std::size_t>(std::ceil(length / step_hint));
  n = std::max<std::size_t>(n + (n % 2), 2);
  const double h = length / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breakpoints, double step_hint) {
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  double total = 0.0;
  double lo = a;
  for (double bp : breakpoints) {
    if (bp <= lo || bp > b) continue;
    total += simpson(f, lo, std::min(bp, b), step_hint);
    lo = bp;
  }
  if (lo < b) total += simpson(f, lo, b, step_hint);
  return total;
}

double gauss_pdf(double x, double mean, double sigma) {
  const double r = (x - mean) / sigma;
  return std::exp(-0.5 * r * r) / (sigma * std::sqrt(2.0 * M_PI));
}

double ranging_mixture_pdf(const slatbp::RangingNoiseModel& model, double x) {
  double p = model.p_los * gauss_pdf(x, 0.0, model.los_sigma);
  for (const slatbp::GmComponent& c : model.nlos_mixture) {
    p += model.p_nlos * c.weight * gauss_pdf(x, c.mean, c.sigma);
  }
  if (model.p_obs > 0.0 && x > 0.0 && x < model.max_obstacle_error) {
    p += model.p_obs / model.max_obstacle_error;
  }
  return p;
}

std::vector<double> ranging_mixture_breakpoints(const slatbp::RangingNoiseModel& model) {
  if (model.p_obs > 0.0) return {0.0, model.max_obstacle_error};
  return {};
}

double convolve_with_uniform(const std::function<double(double)>& pdf,
                             const std::vector<double>& pdf_breakpoints, double lo, double hi,
                             double w, double step_hint) {
  if (!(hi > lo)) throw std::invalid_argument("convolve: empty uniform support");
  // Integrand s -> pdf(w - s) jumps where w - s crosses a pdf breakpoint.
  std::vector<double> breaks;
  for (double b : pdf_breakpoints) breaks.push_back(w - b);
  const double density = 1.0 / (hi - lo);
  return integrate([&](double s) { return pdf(w - s) * density; }, lo, hi, std::move(breaks),
                   step_hint);
}

std::vector<slatbp::Pmf> hmm_forward_filter(const slatbp::CellMap& map,
                                            const slatbp::ImuModel& imu,
                                            const slatbp::RangingNoiseModel& ranging,
                                            const slatbp::Pmf& target_prior,
                                            const std::vector<slatbp::CellId>& sensor_cells,
                                            const std::vector<slatbp::SlotInput>& slots) {
  const std::size_t n = map.size();
  slatbp::Pmf alpha = target_prior.normalized();
  std::vector<slatbp::Pmf> posteriors;
  posteriors.reserve(slots.size());

  for (const slatbp::SlotInput& slot : slots) {
    slatbp::Pmf next(n);
    for (slatbp::CellId x = 0; x < n; ++x) {
      double predicted = 0.0;
      if (slot.velocity) {
        for (slatbp::CellId prev = 0; prev < n; ++prev) {
          predicted += slatbp::dynamic_weight(imu, *slot.velocity, map.center(x), map.center(prev)) *
                       alpha[prev];
        }
      } else {
        predicted = 1.0;
      }
      double emission = 1.0;
      for (const slatbp::RangeMeasurement& r : slot.ranges) {
        emission *= slatbp::ranging_total_noise_pdf(
            ranging, r.distance - slatbp::cell_distance(map, x, sensor_cells[r.sensor]));
      }
      next[x] = predicted * emission;
    }
    next.normalize();
    posteriors.push_back(next);
    alpha = std::move(next);
  }
  return posteriors;
}

SingleSlotMarginals enumerate_single_slot(const slatbp::CellMap& map, const slatbp::ImuModel& imu,
                                          const slatbp::RangingNoiseModel& ranging,
                                          const slatbp::Pmf& target_prior,
                                          const std::vector<slatbp::Pmf>& sensor_priors,
                                          const slatbp::SlotInput& slot) {
  const std::size_t n = map.size();
  const std::size_t n_sensors = sensor_priors.size();

  SingleSlotMarginals out;
  out.target = slatbp::Pmf(n);
  out.sensors.assign(n_sensors, slatbp::Pmf(n));

  // Assignment vector: [x_prev, x_1, z_0 .. z_{Ns-1}], each over the cells.
  std::vector<slatbp::CellId> assign(2 + n_sensors, 0);
  while (true) {
    const slatbp::CellId x_prev = assign[0];
    const slatbp::CellId x_cur = assign[1];
    double weight = target_prior[x_prev];
    if (slot.velocity) {
      weight *= slatbp::dynamic_weight(imu, *slot.velocity, map.center(x_cur), map.center(x_prev));
    }
    for (std::size_t s = 0; s < n_sensors; ++s) weight *= sensor_priors[s][assign[2 + s]];
    for (const slatbp::RangeMeasurement& r : slot.ranges) {
      weight *= slatbp::ranging_total_noise_pdf(
          ranging, r.distance - slatbp::cell_distance(map, x_cur, assign[2 + r.sensor]));
    }

    out.target[x_cur] += weight;
    for (std::size_t s = 0; s < n_sensors; ++s) out.sensors[s][assign[2 + s]] += weight;

    // Odometer increment over all assignment digits.
    std::size_t digit = 0;
    for (; digit < assign.size(); ++digit) {
      if (++assign[digit] < n) break;
      assign[digit] = 0;
    }
    if (digit == assign.size()) break;
  }

  out.target.normalize();
  for (slatbp::Pmf& s : out.sensors) s.normalize();
  return out;
}

}  // namespace oracle
