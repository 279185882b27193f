#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slatbp/geometry.hpp"
#include "slatbp/noise.hpp"
#include "slatbp/pmf.hpp"

namespace slatbp {

enum class Mode {
  kSlat,              // full refinement: target and sensor beliefs updated
  kTrackingOnly,      // sensors keep their priors, target uses the dynamic chain
  kLocalizationOnly,  // sensors keep their priors, no dynamic chain
};

struct RangeMeasurement {
  std::size_t sensor = 0;
  double distance = 0.0;  // m, bias-corrected
};

/// Evidence for one time slot. A missing velocity marks a slot where only
/// ranges arrived; an empty range list marks an IMU-only (dead-reckoning)
/// slot.
struct SlotInput {
  std::optional<Vec3> velocity;  // m/s
  std::vector<RangeMeasurement> ranges;
};

/// Thrown when an updated belief (or an incoming message) has zero total
/// weight, i.e. the evidence is inconsistent with the current support. The
/// engine state is left unmodified.
class BeliefCollapseError : public std::runtime_error {
 public:
  BeliefCollapseError(std::string variable, int time_slot);
  const std::string& variable() const { return variable_; }
  int time_slot() const { return time_slot_; }

 private:
  std::string variable_;
  int time_slot_;
};

struct EngineStats {
  // Summand evaluations of the message sums: (source cell, destination cell)
  // pairs touched. Shrinks when belief-threshold pruning is active.
  std::uint64_t source_cell_iterations = 0;
  std::uint64_t messages_computed = 0;
};

/// Cells whose share of the total belief strictly exceeds
/// belief_threshold / n_cells. A threshold of zero keeps every cell with
/// positive weight, which leaves message sums exact.
std::vector<CellId> active_cells(const Pmf& belief, double belief_threshold);

/// Weighted mean of the centers of the k highest-belief cells, weights
/// renormalized over those k. Ties are broken toward the lower cell id.
/// k = 1 is the MAP estimate, k = n_cells the MMSE estimate.
Vec3 knn_estimate(const Pmf& belief, const CellMap& map, std::size_t k);

/// Real-time discrete belief propagation over one target and a set of static
/// sensors with uncertain positions. Each step consumes one slot of evidence
/// and refreshes the marginal beliefs; no messages are sent backward in time.
class Engine {
 public:
  Engine(CellMap map, ImuModel imu, RangingNoiseModel ranging, const Pmf& target_prior,
         const std::vector<Pmf>& sensor_priors, Mode mode, double belief_threshold,
         std::size_t knn_k);

  /// Advances to slot t+1. Throws BeliefCollapseError (state unmodified) if
  /// any updated belief would lose all weight.
  void step(const SlotInput& input);

  /// Message from a measured sensor to the target, based on the sensor's
  /// current belief. Normalized; throws BeliefCollapseError if all-zero.
  Pmf sensor_to_target_message(std::size_t sensor, double distance) const;

  /// Dynamic-model message from the current target belief under a measured
  /// velocity. Normalized; throws BeliefCollapseError if all-zero.
  Pmf target_transition_message(const Vec3& velocity) const;

  int time_slot() const { return time_slot_; }
  Mode mode() const { return mode_; }
  std::size_t sensor_count() const { return sensor_beliefs_.size(); }
  const Pmf& target_belief() const { return target_belief_; }
  const Pmf& sensor_belief(std::size_t sensor) const;
  const CellMap& map() const { return map_; }
  const EngineStats& stats() const { return stats_; }
  std::size_t knn_k() const { return knn_k_; }

  Vec3 target_estimate() const;
  Vec3 sensor_estimate(std::size_t sensor) const;

 private:
  double pair_likelihood(double distance, CellId a, CellId b) const;

  CellMap map_;
  ImuModel imu_;
  RangingNoiseModel ranging_;
  Mode mode_;
  double belief_threshold_;
  std::size_t knn_k_;
  int time_slot_ = 0;
  Pmf target_belief_;
  std::vector<Pmf> sensor_beliefs_;
  std::vector<double> center_distance_;  // n_cells x n_cells
  mutable EngineStats stats_;
};

/// Evaluates a diagonal Gaussian at the cell centers and normalizes; the
/// standard way to turn a reported location with placement uncertainty into
/// a prior over cells.
Pmf discretize_gaussian_prior(const CellMap& map, const Vec3& mean, double sigma);

}  // namespace slatbp
