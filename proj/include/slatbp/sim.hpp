#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slatbp/engine.hpp"
#include "slatbp/geometry.hpp"
#include "slatbp/noise.hpp"
#include "slatbp/rng.hpp"

namespace slatbp::sim {

/// All scenario knobs. Noise parameters of zero are legal here (they turn
/// the corresponding synthesis term off); the engine models built from a
/// config still have to satisfy their own validity requirements.
struct ScenarioConfig {
  std::size_t n_cells = 44;
  std::size_t n_sensors = 25;
  std::size_t n_slots = 40;
  double sample_interval = 1.0;       // s
  double sensor_sigma = 6.0;          // m, placement uncertainty of the priors
  double p_nlos = 0.17;
  double p_obs = 0.03;
  double imu_sigma = 0.5;             // m/s
  double los_sigma = 1.0;             // m
  double sensing_radius = 30.0;       // m
  double max_obstacle_error = 30.0;   // m
  double quantization_length = 5.0;   // m
  std::size_t knn_k = 2;
  double belief_threshold = 0.05;
  std::size_t n_runs = 100;
  std::uint64_t seed = 1;
  Mode mode = Mode::kSlat;
  double outlier_probability = 0.0;   // contamination weight
  double outlier_distance = 0.0;      // m, added with the above probability
  std::string map_path;               // empty: generate a corridor map
  std::string nlos_db_path;           // empty: synthesize a database

  // Corridor generation (used when map_path is empty).
  double corridor_pitch = 5.0;   // m, spacing along the corridor
  double corridor_width = 5.0;   // m
  double corridor_height = 5.0;  // m
  double corridor_jitter = 1.0;  // m, lateral center jitter

  std::size_t n_gm_components = 5;
  std::size_t nlos_db_size = 1164;

  void validate() const;
};

struct GroundTruth {
  CellId initial_target_cell = 0;
  std::vector<CellId> sensor_cells;  // one per sensor
  std::vector<CellId> target_cells;  // one per slot, slots 1..n_slots
};

struct RunMetrics {
  std::vector<double> target_error;               // per slot, m
  std::vector<std::vector<double>> sensor_error;  // [slot][sensor], m
  bool collapsed = false;
  std::string collapse_variable;
};

/// Chain of cells along +x with the given pitch and mild lateral jitter of
/// the centers; per-cell extents are (pitch, width, height).
CellMap generate_corridor_map(std::size_t n_cells, double pitch, double width, double height,
                              double jitter, Rng& rng);

/// Forward-then-backward sweep over the corridor with one unit of index
/// noise per slot; indices are clamped into the map.
std::vector<CellId> generate_track(std::size_t n_slots, std::size_t n_cells, Rng& rng);
std::vector<CellId> generate_track(std::size_t n_slots, std::size_t n_cells,
                                   const std::vector<int>& index_noise);

struct Deployment {
  std::vector<CellId> cells;
  std::vector<Pmf> priors;
};

/// True sensor cells drawn uniformly without replacement; each prior is a
/// Gaussian of scale sensor_sigma centered on the true cell center,
/// discretized over the cell centers.
Deployment deploy_sensors(const ScenarioConfig& config, const CellMap& map, Rng& rng);

/// Per-slot velocity and range measurements. Ranges are emitted exactly for
/// the sensors whose true distance is below the sensing radius; each range
/// carries quantization noise, a LOS/NLOS/obstacle measurement error and an
/// optional outlier.
std::vector<SlotInput> synthesize_measurements(const ScenarioConfig& config,
                                               const GroundTruth& truth, const CellMap& map,
                                               const std::vector<double>& nlos_samples, Rng& rng);

/// Draws nonnegative samples from the mixture (rejection on the sign).
std::vector<double> synthesize_nlos_db(const std::vector<GmComponent>& mixture, std::size_t count,
                                       Rng& rng);

/// Ground-truth mixture used when no sample database is supplied: five
/// positive, well-separated modes within the obstacle error bound.
std::vector<GmComponent> default_nlos_mixture();

const char* mode_name(Mode mode);
Mode parse_mode(const std::string& name);

struct RunSummary {
  std::size_t run = 0;
  double target_rmse = 0.0;
  double sensor_rmse = 0.0;
  bool collapsed = false;
  std::string collapse_variable;
};

struct ModeResult {
  Mode mode = Mode::kSlat;
  std::vector<double> target_rmse_by_slot;
  std::vector<double> sensor_rmse_by_slot;
  double mean_target_rmse = 0.0;  // mean over slots of the per-slot RMSE
  double mean_sensor_rmse = 0.0;
  std::vector<double> pooled_target_errors;
  std::vector<double> pooled_sensor_errors;
  std::vector<RunSummary> runs;
  std::size_t collapse_count = 0;
  std::uint64_t source_cell_iterations = 0;
};

struct McResult {
  std::vector<ModeResult> modes;
  const ModeResult& for_mode(Mode mode) const;
};

/// Runs n_runs independent scenarios for each requested mode. Within a run
/// every mode sees the same deployment, track and measurements. Run r uses
/// the dedicated substream (seed, kRun, r), so results are identical for any
/// thread count.
McResult run_monte_carlo(const ScenarioConfig& config, const std::vector<Mode>& modes,
                         unsigned n_threads = 0);

/// rmse_time.csv: slot,mode,target_rmse,sensor_rmse
void write_rmse_csv(const McResult& result, const std::string& path);
/// cdf.csv: mode,variable,error,cum_prob with variable in {target, sensor}
void write_cdf_csv(const McResult& result, const std::string& path);
/// runs.jsonl: one summary object per (run, mode)
void write_runs_jsonl(const McResult& result, const std::string& path);
/// summary.json: per-mode mean RMSE and collapse counts
void write_summary_json(const McResult& result, const std::string& path);

ScenarioConfig load_scenario_config(const std::string& path);
void save_scenario_config(const ScenarioConfig& config, const std::string& path);

}  // namespace slatbp::sim
