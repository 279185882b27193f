#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "slatbp/rng.hpp"
#include "slatbp/sim.hpp"

using namespace slatbp;
using namespace slatbp::sim;

namespace {

ScenarioConfig desk_config() {
  ScenarioConfig c;
  c.n_cells = 24;
  c.n_sensors = 14;
  c.n_slots = 22;
  c.n_runs = 10;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("track generation") {
  SUBCASE("first slot lands within one cell of index two") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const auto track = generate_track(40, 44, rng);
      CHECK(track[0] >= 1);
      CHECK(track[0] <= 3);
    }
  }
  SUBCASE("backward branch arithmetic at the last slot") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const auto track = generate_track(40, 44, rng);
      CHECK(track[39] >= 5);  // 2*(44-1-40) = 6, plus index noise in {-1,0,1}
      CHECK(track[39] <= 7);
    }
  }
  SUBCASE("noise-free track is palindromic around the turn") {
    const auto track = generate_track(40, 44, std::vector<int>(40, 0));
    // Forward slots end at t=21, the backward sweep revisits the same cells.
    for (std::size_t j = 0; j + 21 <= 39 && 21 >= j + 1; ++j) {
      CHECK(track[20 - j] == track[21 + j]);
    }
    CHECK(track[0] == 2);
    CHECK(track[20] == 42);
    CHECK(track[39] == 6);
  }
  SUBCASE("indices are clamped into the map") {
    Rng rng(1);
    for (int rep = 0; rep < 50; ++rep) {
      const auto track = generate_track(22, 24, rng);
      for (CellId c : track) CHECK(c < 24);
    }
  }
  SUBCASE("a too-small map is rejected") {
    Rng rng(1);
    CHECK_THROWS(generate_track(40, 10, rng));
    CHECK_THROWS(generate_track(40, 44, std::vector<int>(39, 0)));
  }
}

TEST_CASE("sensor deployment") {
  Rng map_rng(3);
  const CellMap map = generate_corridor_map(24, 5.0, 5.0, 5.0, 1.0, map_rng);

  SUBCASE("tiny sigma collapses the prior onto the true cell") {
    ScenarioConfig config = desk_config();
    config.sensor_sigma = 1e-6;
    Rng rng(8);
    const Deployment dep = deploy_sensors(config, map, rng);
    for (std::size_t s = 0; s < dep.cells.size(); ++s) {
      CHECK(dep.priors[s][dep.cells[s]] == doctest::Approx(1.0));
    }
  }

  SUBCASE("six-meter sigma spreads mass to the neighbors") {
    ScenarioConfig config = desk_config();
    Rng rng(8);
    const Deployment dep = deploy_sensors(config, map, rng);
    for (std::size_t s = 0; s < dep.cells.size(); ++s) {
      CHECK(dep.priors[s][dep.cells[s]] < 1.0);
      double off_mass = 0.0;
      for (CellId c = 0; c < map.size(); ++c) {
        if (c != dep.cells[s]) off_mass += dep.priors[s][c];
      }
      CHECK(off_mass > 0.1);
    }
  }

  SUBCASE("cells are distinct and the draw is reproducible") {
    ScenarioConfig config = desk_config();
    Rng rng1(8);
    Rng rng2(8);
    const Deployment a = deploy_sensors(config, map, rng1);
    const Deployment b = deploy_sensors(config, map, rng2);
    CHECK(a.cells == b.cells);
    CHECK(std::set<CellId>(a.cells.begin(), a.cells.end()).size() == a.cells.size());
  }

  SUBCASE("more sensors than cells is an error") {
    ScenarioConfig config = desk_config();
    config.n_sensors = 25;
    Rng rng(8);
    CHECK_THROWS(deploy_sensors(config, map, rng));
  }
}

TEST_CASE("measurement synthesis") {
  Rng map_rng(3);
  const CellMap map = generate_corridor_map(24, 5.0, 5.0, 5.0, 0.0, map_rng);
  ScenarioConfig config = desk_config();

  Rng dep_rng(9);
  const Deployment dep = deploy_sensors(config, map, dep_rng);
  GroundTruth truth;
  truth.sensor_cells = dep.cells;
  Rng track_rng(10);
  truth.target_cells = generate_track(config.n_slots, map.size(), track_rng);

  const std::vector<double> db = {1.0, 2.0, 3.0};

  SUBCASE("noiseless hooks reproduce truth exactly") {
    ScenarioConfig quiet = config;
    quiet.imu_sigma = 0.0;
    quiet.los_sigma = 0.0;
    quiet.quantization_length = 0.0;
    quiet.p_nlos = 0.0;
    quiet.p_obs = 0.0;
    quiet.outlier_probability = 0.0;
    Rng rng(11);
    const auto slots = synthesize_measurements(quiet, truth, map, {}, rng);
    REQUIRE(slots.size() == quiet.n_slots);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const Vec3 current = map.center(truth.target_cells[t]);
      const Vec3 previous =
          map.center(t == 0 ? truth.initial_target_cell : truth.target_cells[t - 1]);
      REQUIRE(slots[t].velocity.has_value());
      CHECK(slots[t].velocity->x == doctest::Approx((current.x - previous.x)));
      CHECK(slots[t].velocity->y == doctest::Approx((current.y - previous.y)));
      CHECK(slots[t].velocity->z == doctest::Approx((current.z - previous.z)));
      for (const RangeMeasurement& r : slots[t].ranges) {
        CHECK(r.distance ==
              doctest::Approx(norm(current - map.center(truth.sensor_cells[r.sensor]))));
      }
    }
  }

  SUBCASE("the sensing set is exactly the sensors inside the radius") {
    Rng rng(12);
    const auto slots = synthesize_measurements(config, truth, map, db, rng);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      std::set<std::size_t> measured;
      for (const RangeMeasurement& r : slots[t].ranges) measured.insert(r.sensor);
      for (std::size_t n = 0; n < config.n_sensors; ++n) {
        const double true_d =
            norm(map.center(truth.target_cells[t]) - map.center(truth.sensor_cells[n]));
        CHECK(measured.count(n) == (true_d < config.sensing_radius ? 1u : 0u));
      }
    }
  }

  SUBCASE("contamination adds exactly the outlier distance") {
    ScenarioConfig clean = config;
    clean.outlier_probability = 0.0;
    ScenarioConfig dirty = config;
    dirty.outlier_probability = 1.0;
    dirty.outlier_distance = 10.0;
    Rng rng_a(13);
    Rng rng_b(13);
    const auto base = synthesize_measurements(clean, truth, map, db, rng_a);
    const auto shifted = synthesize_measurements(dirty, truth, map, db, rng_b);
    REQUIRE(base.size() == shifted.size());
    for (std::size_t t = 0; t < base.size(); ++t) {
      REQUIRE(base[t].ranges.size() == shifted[t].ranges.size());
      for (std::size_t i = 0; i < base[t].ranges.size(); ++i) {
        CHECK(shifted[t].ranges[i].distance ==
              doctest::Approx(base[t].ranges[i].distance + 10.0));
      }
    }
  }

  SUBCASE("probability-zero contamination is the identity") {
    ScenarioConfig with_distance = config;
    with_distance.outlier_probability = 0.0;
    with_distance.outlier_distance = 30.0;
    Rng rng_a(14);
    Rng rng_b(14);
    const auto a = synthesize_measurements(config, truth, map, db, rng_a);
    const auto b = synthesize_measurements(with_distance, truth, map, db, rng_b);
    for (std::size_t t = 0; t < a.size(); ++t) {
      for (std::size_t i = 0; i < a[t].ranges.size(); ++i) {
        CHECK(a[t].ranges[i].distance == b[t].ranges[i].distance);
      }
    }
  }

  SUBCASE("an empty NLOS database is only an error when NLOS can occur") {
    Rng rng(15);
    CHECK_THROWS(synthesize_measurements(config, truth, map, {}, rng));
    ScenarioConfig no_nlos = config;
    no_nlos.p_nlos = 0.0;
    CHECK_NOTHROW(synthesize_measurements(no_nlos, truth, map, {}, rng));
  }
}

TEST_CASE("nlos database synthesis") {
  SUBCASE("single-component statistics") {
    Rng rng(21);
    const auto samples = synthesize_nlos_db({{1.0, 5.0, 0.1}}, 5000, rng);
    CHECK(samples.size() == 5000);
    double mean = 0.0;
    for (double s : samples) {
      CHECK(s >= 0.0);
      mean += s;
    }
    mean /= static_cast<double>(samples.size());
    CHECK(std::abs(mean - 5.0) < 3.0 * 0.1 / std::sqrt(5000.0));
  }
  SUBCASE("database size matches the request") {
    Rng rng(22);
    CHECK(synthesize_nlos_db(default_nlos_mixture(), 1164, rng).size() == 1164);
  }
  SUBCASE("mixtures stuck at negative values fail after bounded attempts") {
    Rng rng(23);
    CHECK_THROWS(synthesize_nlos_db({{1.0, -1000.0, 0.01}}, 10, rng));
  }
}

TEST_CASE("monte carlo: noiseless scenario tracks exactly") {
  ScenarioConfig config = desk_config();
  config.n_runs = 3;
  config.sensor_sigma = 1e-6;  // delta priors
  config.imu_sigma = 0.01;
  config.los_sigma = 0.01;
  config.quantization_length = 0.01;
  config.p_nlos = 0.0;
  config.p_obs = 0.0;
  config.knn_k = 1;
  config.belief_threshold = 0.0;

  const McResult result = run_monte_carlo(config, {Mode::kSlat}, 1);
  const ModeResult& slat = result.for_mode(Mode::kSlat);
  CHECK(slat.collapse_count == 0);
  for (double rmse : slat.target_rmse_by_slot) CHECK(rmse < 1e-6);
}

TEST_CASE("monte carlo: reproducible and thread-count independent") {
  ScenarioConfig config = desk_config();
  config.n_runs = 6;

  const std::vector<Mode> modes = {Mode::kSlat, Mode::kTrackingOnly};
  const McResult a = run_monte_carlo(config, modes, 1);
  const McResult b = run_monte_carlo(config, modes, 1);
  const McResult c = run_monte_carlo(config, modes, 4);

  for (std::size_t m = 0; m < modes.size(); ++m) {
    CHECK(a.modes[m].target_rmse_by_slot == b.modes[m].target_rmse_by_slot);
    CHECK(a.modes[m].target_rmse_by_slot == c.modes[m].target_rmse_by_slot);
    CHECK(a.modes[m].sensor_rmse_by_slot == c.modes[m].sensor_rmse_by_slot);
    CHECK(a.modes[m].pooled_target_errors == c.modes[m].pooled_target_errors);
    CHECK(a.modes[m].source_cell_iterations == c.modes[m].source_cell_iterations);
  }
}

TEST_CASE("monte carlo: widening the sensing radius does not hurt") {
  ScenarioConfig config = desk_config();
  config.n_runs = 30;
  std::vector<double> rmse;
  for (double radius : {15.0, 20.0, 25.0, 30.0}) {
    ScenarioConfig c = config;
    c.sensing_radius = radius;
    c.max_obstacle_error = radius;
    const McResult result = run_monte_carlo(c, {Mode::kSlat}, 0);
    rmse.push_back(result.for_mode(Mode::kSlat).mean_target_rmse);
  }
  for (std::size_t i = 1; i < rmse.size(); ++i) {
    CHECK(rmse[i] <= rmse[i - 1] * 1.03);
  }
  CHECK(rmse.back() < rmse.front());
}

TEST_CASE("config validation") {
  ScenarioConfig config = desk_config();
  CHECK_NOTHROW(config.validate());
  SUBCASE("bad probability") {
    config.p_nlos = 1.5;
    CHECK_THROWS(config.validate());
  }
  SUBCASE("zero sensing radius") {
    config.sensing_radius = 0.0;
    CHECK_THROWS(config.validate());
  }
  SUBCASE("zero runs") {
    config.n_runs = 0;
    CHECK_THROWS(config.validate());
  }
  SUBCASE("too many sensors") {
    config.n_sensors = config.n_cells + 1;
    CHECK_THROWS(config.validate());
  }
}

TEST_CASE("mode names round-trip") {
  for (Mode mode : {Mode::kSlat, Mode::kTrackingOnly, Mode::kLocalizationOnly}) {
    CHECK(parse_mode(mode_name(mode)) == mode);
  }
  CHECK_THROWS(parse_mode("unknown"));
}

}  // TEST_SUITE
