#pragma once

#include <algorithm>
#include <vector>

#include "slatbp/engine.hpp"
#include "slatbp/geometry.hpp"
#include "slatbp/noise.hpp"
#include "slatbp/rng.hpp"
#include "slatbp/sim.hpp"

namespace testing_helpers {

/// Straight line of cells along x with 5 m pitch and 5 m cube extents.
inline slatbp::CellMap line_map(std::size_t n_cells, double pitch = 5.0) {
  std::vector<slatbp::Vec3> centers(n_cells);
  std::vector<slatbp::Vec3> extents(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    centers[c] = {static_cast<double>(c) * pitch, 0.0, 0.0};
    extents[c] = {5.0, 5.0, 5.0};
  }
  return slatbp::CellMap(std::move(centers), std::move(extents));
}

inline slatbp::ImuModel test_imu() { return {0.5, 5.0, 1.0}; }

inline slatbp::RangingNoiseModel test_ranging() {
  slatbp::RangingNoiseModel m;
  m.p_los = 0.80;
  m.p_nlos = 0.17;
  m.p_obs = 0.03;
  m.los_sigma = 1.0;
  m.nlos_mixture = slatbp::sim::default_nlos_mixture();
  m.max_obstacle_error = 30.0;
  m.quantization_length = 5.0;
  return m;
}

/// A random tracking problem with exactly known sensor positions, built so
/// every synthetic measurement stays inside the noise support.
struct HmmInstance {
  slatbp::CellMap map{{{0, 0, 0}}, {{1, 1, 1}}};
  std::vector<slatbp::CellId> sensor_cells;
  std::vector<slatbp::Pmf> sensor_priors;  // deltas at the true cells
  slatbp::Pmf target_prior;
  std::vector<slatbp::SlotInput> slots;
};

inline HmmInstance random_hmm_instance(slatbp::Rng& rng, int max_cells, int max_sensors,
                                       int max_slots) {
  using namespace slatbp;
  const std::size_t n_cells = static_cast<std::size_t>(rng.uniform_int(2, max_cells));
  const std::size_t n_sensors = static_cast<std::size_t>(rng.uniform_int(1, max_sensors));
  const std::size_t n_slots = static_cast<std::size_t>(rng.uniform_int(1, max_slots));
  const ImuModel imu = test_imu();

  std::vector<Vec3> centers;
  std::vector<Vec3> extents;
  for (std::size_t c = 0; c < n_cells; ++c) {
    centers.push_back({rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-3, 3)});
    extents.push_back({5, 5, 5});
  }

  HmmInstance inst;
  inst.map = CellMap(std::move(centers), std::move(extents));
  for (std::size_t s = 0; s < n_sensors; ++s) {
    const CellId cell = static_cast<CellId>(rng.uniform_int(0, static_cast<int>(n_cells) - 1));
    inst.sensor_cells.push_back(cell);
    inst.sensor_priors.push_back(Pmf::delta(n_cells, cell));
  }

  inst.target_prior = Pmf(n_cells);
  for (CellId c = 0; c < n_cells; ++c) inst.target_prior[c] = rng.uniform(0.05, 1.0);

  CellId prev_cell = static_cast<CellId>(rng.uniform_int(0, static_cast<int>(n_cells) - 1));
  inst.slots.resize(n_slots);
  for (std::size_t t = 0; t < n_slots; ++t) {
    const CellId truth = static_cast<CellId>(rng.uniform_int(0, static_cast<int>(n_cells) - 1));
    if (rng.uniform() < 0.85) {
      Vec3 v = (1.0 / imu.sample_interval) *
               (inst.map.center(truth) - inst.map.center(prev_cell));
      v.x += rng.uniform(-3, 3);
      v.y += rng.uniform(-3, 3);
      v.z += rng.uniform(-3, 3);
      inst.slots[t].velocity = v;
    }
    for (std::size_t s = 0; s < n_sensors; ++s) {
      if (rng.uniform() < 0.7) {
        const double d =
            cell_distance(inst.map, truth, inst.sensor_cells[s]) + rng.uniform(-1.0, 5.0);
        inst.slots[t].ranges.push_back({s, std::max(d, 0.0)});
      }
    }
    prev_cell = truth;
  }
  return inst;
}

}  // namespace testing_helpers
