#include "slatbp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slatbp {

BeliefCollapseError::BeliefCollapseError(std::string variable, int time_slot)
    : std::runtime_error("belief collapse at slot " + std::to_string(time_slot) + ": " + variable +
                         " has zero total weight"),
      variable_(std::move(variable)),
      time_slot_(time_slot) {}

std::vector<CellId> active_cells(const Pmf& belief, double belief_threshold) {
  const double total = belief.sum();
  const double cutoff = total * belief_threshold / static_cast<double>(belief.size());
  std::vector<CellId> cells;
  cells.reserve(belief.size());
  for (CellId c = 0; c < belief.size(); ++c) {
    if (belief[c] > cutoff && belief[c] > 0.0) cells.push_back(c);
  }
  return cells;
}

Vec3 knn_estimate(const Pmf& belief, const CellMap& map, std::size_t k) {
  if (belief.size() != map.size())
    throw std::invalid_argument("knn estimate: belief and map size mismatch");
  if (k < 1 || k > map.size())
    throw std::invalid_argument("knn estimate: k must be in [1, n_cells]");

  std::vector<CellId> order(map.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](CellId a, CellId b) {
                      if (belief[a] != belief[b]) return belief[a] > belief[b];
                      return a < b;
                    });

  double total = 0.0;
  Vec3 estimate{};
  for (std::size_t i = 0; i < k; ++i) {
    const CellId c = order[i];
    total += belief[c];
    estimate = estimate + belief[c] * map.center(c);
  }
  if (!(total > 0.0)) throw std::invalid_argument("knn estimate: belief has zero total weight");
  return (1.0 / total) * estimate;
}

Pmf discretize_gaussian_prior(const CellMap& map, const Vec3& mean, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian prior: sigma must be positive");
  Pmf prior(map.size());
  for (CellId c = 0; c < map.size(); ++c) {
    const Vec3 d = map.center(c) - mean;
    prior[c] = std::exp(-(d.x * d.x + d.y * d.y + d.z * d.z) / (2.0 * sigma * sigma));
  }
  prior.normalize();
  return prior;
}

Engine::Engine(CellMap map, ImuModel imu, RangingNoiseModel ranging, const Pmf& target_prior,
               const std::vector<Pmf>& sensor_priors, Mode mode, double belief_threshold,
               std::size_t knn_k)
    : map_(std::move(map)),
      imu_(imu),
      ranging_(ranging),
      mode_(mode),
      belief_threshold_(belief_threshold),
      knn_k_(knn_k) {
  imu_.validate();
  ranging_.validate();
  if (!(belief_threshold_ >= 0.0) || belief_threshold_ >= 1.0)
    throw std::invalid_argument("engine: belief threshold must be in [0, 1)");
  if (knn_k_ < 1 || knn_k_ > map_.size())
    throw std::invalid_argument("engine: knn parameter must be in [1, n_cells]");
  if (target_prior.size() != map_.size())
    throw std::invalid_argument("engine: target prior size mismatch");
  target_belief_ = target_prior.normalized();
  sensor_beliefs_.reserve(sensor_priors.size());
  for (const Pmf& prior : sensor_priors) {
    if (prior.size() != map_.size())
      throw std::invalid_argument("engine: sensor prior size mismatch");
    sensor_beliefs_.push_back(prior.normalized());
  }

  const std::size_t n = map_.size();
  center_distance_.resize(n * n);
  for (CellId a = 0; a < n; ++a) {
    for (CellId b = 0; b < n; ++b) center_distance_[a * n + b] = cell_distance(map_, a, b);
  }
}

const Pmf& Engine::sensor_belief(std::size_t sensor) const {
  if (sensor >= sensor_beliefs_.size())
    throw std::out_of_range("engine: invalid sensor index " + std::to_string(sensor));
  return sensor_beliefs_[sensor];
}

double Engine::pair_likelihood(double distance, CellId a, CellId b) const {
  return ranging_total_noise_pdf(ranging_, distance - center_distance_[a * map_.size() + b]);
}

Pmf Engine::sensor_to_target_message(std::size_t sensor, double distance) const {
  const Pmf& source = sensor_belief(sensor);
  const std::vector<CellId> sources = active_cells(source, belief_threshold_);
  const std::size_t n = map_.size();
  Pmf message(n);
  for (CellId x = 0; x < n; ++x) {
    double sum = 0.0;
    for (CellId z : sources) sum += pair_likelihood(distance, x, z) * source[z];
    message[x] = sum;
  }
  stats_.source_cell_iterations += sources.size() * n;
  ++stats_.messages_computed;
  if (!(message.sum() > 0.0))
    throw BeliefCollapseError("sensor-to-target message from sensor " + std::to_string(sensor),
                              time_slot_ + 1);
  message.normalize();
  return message;
}

Pmf Engine::target_transition_message(const Vec3& velocity) const {
  const std::vector<CellId> sources = active_cells(target_belief_, belief_threshold_);
  const std::size_t n = map_.size();
  Pmf message(n);
  for (CellId x = 0; x < n; ++x) {
    double sum = 0.0;
    for (CellId prev : sources) {
      sum += dynamic_weight(imu_, velocity, map_.center(x), map_.center(prev)) *
             target_belief_[prev];
    }
    message[x] = sum;
  }
  stats_.source_cell_iterations += sources.size() * n;
  ++stats_.messages_computed;
  if (!(message.sum() > 0.0))
    throw BeliefCollapseError("target transition message", time_slot_ + 1);
  message.normalize();
  return message;
}

void Engine::step(const SlotInput& input) {
  const int next_slot = time_slot_ + 1;
  const std::size_t n = map_.size();
  std::vector<bool> seen(sensor_beliefs_.size(), false);
  for (const RangeMeasurement& r : input.ranges) {
    if (r.sensor >= sensor_beliefs_.size())
      throw std::invalid_argument("engine: range for unknown sensor " + std::to_string(r.sensor));
    if (!std::isfinite(r.distance) || r.distance < 0.0)
      throw std::invalid_argument("engine: range distance must be finite and nonnegative");
    if (seen[r.sensor])
      throw std::invalid_argument("engine: duplicate range for sensor " + std::to_string(r.sensor));
    seen[r.sensor] = true;
  }

  // Dynamic-chain message. Without a velocity (or in localization mode) the
  // mobility is uninformative and the message is constant.
  Pmf transition;
  if (mode_ == Mode::kLocalizationOnly || !input.velocity.has_value()) {
    transition = Pmf::uniform(n);
  } else {
    transition = target_transition_message(*input.velocity);
  }

  // Evidence messages from the measured sensors. An empty range list leaves
  // only the dynamic chain (dead reckoning).
  std::vector<Pmf> sensor_messages;
  sensor_messages.reserve(input.ranges.size());
  for (const RangeMeasurement& r : input.ranges) {
    sensor_messages.push_back(sensor_to_target_message(r.sensor, r.distance));
  }

  // Target belief: product of the incoming messages, renormalized after each
  // factor so intermediate products cannot underflow.
  Pmf new_target = transition;
  for (const Pmf& message : sensor_messages) {
    new_target.multiply(message);
    if (!(new_target.sum() > 0.0)) throw BeliefCollapseError("target belief", next_slot);
    new_target.normalize();
  }

  // Sensor beliefs: only refreshed in full SLAT mode, and only for the
  // sensors that measured this slot. The outgoing message to sensor n is the
  // cavity product (all incoming target messages except n's own), which
  // equals the belief quotient wherever that quotient is defined.
  std::vector<Pmf> new_sensor_beliefs;
  std::vector<std::size_t> updated_sensors;
  if (mode_ == Mode::kSlat && !input.ranges.empty()) {
    const std::vector<CellId> target_sources = active_cells(new_target, belief_threshold_);
    for (std::size_t i = 0; i < input.ranges.size(); ++i) {
      const std::size_t sensor = input.ranges[i].sensor;
      const double distance = input.ranges[i].distance;

      Pmf cavity = transition;
      for (std::size_t j = 0; j < sensor_messages.size(); ++j) {
        if (j == i) continue;
        cavity.multiply(sensor_messages[j]);
        if (!(cavity.sum() > 0.0))
          throw BeliefCollapseError("cavity product for sensor " + std::to_string(sensor),
                                    next_slot);
        cavity.normalize();
      }

      Pmf outgoing(n);
      for (CellId z = 0; z < n; ++z) {
        double sum = 0.0;
        for (CellId x : target_sources) sum += pair_likelihood(distance, x, z) * cavity[x];
        outgoing[z] = sum;
      }
      stats_.source_cell_iterations += target_sources.size() * n;
      ++stats_.messages_computed;

      Pmf updated = sensor_beliefs_[sensor];
      updated.multiply(outgoing);
      if (!(updated.sum() > 0.0))
        throw BeliefCollapseError("sensor " + std::to_string(sensor) + " belief", next_slot);
      updated.normalize();
      new_sensor_beliefs.push_back(std::move(updated));
      updated_sensors.push_back(sensor);
    }
  }

  // Commit only after every update succeeded.
  target_belief_ = std::move(new_target);
  for (std::size_t i = 0; i < updated_sensors.size(); ++i) {
    sensor_beliefs_[updated_sensors[i]] = std::move(new_sensor_beliefs[i]);
  }
  time_slot_ = next_slot;
}

Vec3 Engine::target_estimate() const { return knn_estimate(target_belief_, map_, knn_k_); }

Vec3 Engine::sensor_estimate(std::size_t sensor) const {
  return knn_estimate(sensor_belief(sensor), map_, knn_k_);
}

}  // namespace slatbp
