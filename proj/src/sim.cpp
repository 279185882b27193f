#include "slatbp/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "slatbp/gm_fit.hpp"
#include "slatbp/json_io.hpp"

namespace slatbp::sim {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_cells < 1) throw std::invalid_argument("config: N_c must be at least 1");
  if (n_slots < 1) throw std::invalid_argument("config: N_T must be at least 1");
  if (n_sensors > n_cells)
    throw std::invalid_argument("config: N_s must not exceed N_c (one sensor per cell)");
  if (!(sample_interval > 0.0)) throw std::invalid_argument("config: Ts must be positive");
  if (!(sensor_sigma > 0.0)) throw std::invalid_argument("config: sigma_S must be positive");
  for (double p : {p_nlos, p_obs, outlier_probability}) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("config: probabilities must be in [0, 1]");
  }
  if (p_nlos + p_obs > 1.0)
    throw std::invalid_argument("config: p_nlos + p_obs must not exceed 1");
  if (!(sensing_radius > 0.0)) throw std::invalid_argument("config: d_th must be positive");
  if (imu_sigma < 0.0 || los_sigma < 0.0 || quantization_length < 0.0 ||
      max_obstacle_error < 0.0)
    throw std::invalid_argument("config: noise scales must be nonnegative");
  if (knn_k < 1 || knn_k > n_cells)
    throw std::invalid_argument("config: k must be in [1, N_c]");
  if (!(belief_threshold >= 0.0) || belief_threshold >= 1.0)
    throw std::invalid_argument("config: epsilon_m must be in [0, 1)");
  if (n_runs < 1) throw std::invalid_argument("config: n_mc must be at least 1");
  if (map_path.empty() && !(corridor_pitch > 0.0 && corridor_width > 0.0 &&
                            corridor_height > 0.0 && corridor_jitter >= 0.0))
    throw std::invalid_argument("config: corridor dimensions must be positive");
  if (n_gm_components < 1) throw std::invalid_argument("config: GM component count must be >= 1");
  // The track sweep advances two cells per slot; beyond this bound clamping
  // would distort most of the track rather than just its end points.
  if (2 * (n_slots / 2 + 1) + 1 > 2 * n_cells)
    throw std::invalid_argument("config: map too small for the track sweep (need more cells)");
}

CellMap generate_corridor_map(std::size_t n_cells, double pitch, double width, double height,
                              double jitter, Rng& rng) {
  if (n_cells < 1) throw std::invalid_argument("corridor map: need at least one cell");
  if (!(pitch > 0.0)) throw std::invalid_argument("corridor map: pitch must be positive");
  std::vector<Vec3> centers(n_cells);
  std::vector<Vec3> extents(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    centers[c] = {static_cast<double>(c) * pitch, rng.uniform(-jitter, jitter),
                  rng.uniform(-jitter, jitter)};
    extents[c] = {pitch, width, height};
  }
  return CellMap(std::move(centers), std::move(extents));
}

std::vector<CellId> generate_track(std::size_t n_slots, std::size_t n_cells,
                                   const std::vector<int>& index_noise) {
  if (index_noise.size() != n_slots)
    throw std::invalid_argument("track: need one index-noise draw per slot");
  if (2 * (n_slots / 2 + 1) + 1 > 2 * n_cells)
    throw std::invalid_argument("track: map too small for the sweep");
  const std::size_t turn = n_slots / 2 + 1;
  std::vector<CellId> track(n_slots);
  for (std::size_t t = 1; t <= n_slots; ++t) {
    const long long base = (t <= turn)
                               ? 2 * static_cast<long long>(t)
                               : 2 * (static_cast<long long>(n_cells) - 1 - static_cast<long long>(t));
    const long long idx = base + index_noise[t - 1];
    track[t - 1] = static_cast<CellId>(
        std::clamp(idx, 0LL, static_cast<long long>(n_cells) - 1));
  }
  return track;
}

std::vector<CellId> generate_track(std::size_t n_slots, std::size_t n_cells, Rng& rng) {
  std::vector<int> index_noise(n_slots);
  for (int& eta : index_noise) eta = static_cast<int>(rng.uniform_int(-1, 1));
  return generate_track(n_slots, n_cells, index_noise);
}

Deployment deploy_sensors(const ScenarioConfig& config, const CellMap& map, Rng& rng) {
  if (config.n_sensors > map.size())
    throw std::invalid_argument("deploy: more sensors than cells");
  std::vector<CellId> pool(map.size());
  for (CellId c = 0; c < map.size(); ++c) pool[c] = c;
  Deployment dep;
  dep.cells.reserve(config.n_sensors);
  dep.priors.reserve(config.n_sensors);
  for (std::size_t i = 0; i < config.n_sensors; ++i) {
    const std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(map.size()) - 1));
    std::swap(pool[i], pool[j]);
    dep.cells.push_back(pool[i]);
    // The deployment team's report is the true center displaced by the
    // placement error; the prior carries that same scale, which is the
    // posterior of the true position given the report.
    const Vec3 truth = map.center(pool[i]);
    const Vec3 reported{truth.x + rng.normal(0.0, config.sensor_sigma),
                        truth.y + rng.normal(0.0, config.sensor_sigma),
                        truth.z + rng.normal(0.0, config.sensor_sigma)};
    dep.priors.push_back(discretize_gaussian_prior(map, reported, config.sensor_sigma));
  }
  return dep;
}

std::vector<SlotInput> synthesize_measurements(const ScenarioConfig& config,
                                               const GroundTruth& truth, const CellMap& map,
                                               const std::vector<double>& nlos_samples, Rng& rng) {
  if (truth.target_cells.size() != config.n_slots)
    throw std::invalid_argument("synthesize: truth has wrong slot count");
  if (truth.sensor_cells.size() != config.n_sensors)
    throw std::invalid_argument("synthesize: truth has wrong sensor count");
  if (config.p_nlos > 0.0 && nlos_samples.empty())
    throw std::invalid_argument("synthesize: NLOS database is empty but p_nlos > 0");

  const double quant_half_span = config.quantization_length / config.sample_interval;
  const double range_quant_span = config.quantization_length * kSqrt3;
  const double p_los = 1.0 - config.p_nlos - config.p_obs;

  std::vector<SlotInput> slots(config.n_slots);
  for (std::size_t t = 0; t < config.n_slots; ++t) {
    const Vec3 current = map.center(truth.target_cells[t]);
    const Vec3 previous =
        map.center(t == 0 ? truth.initial_target_cell : truth.target_cells[t - 1]);

    Vec3 velocity = (1.0 / config.sample_interval) * (current - previous);
    double* comps[3] = {&velocity.x, &velocity.y, &velocity.z};
    for (double* comp : comps) {
      *comp += rng.uniform(-quant_half_span, quant_half_span);
      *comp += rng.normal(0.0, config.imu_sigma);
    }
    slots[t].velocity = velocity;

    for (std::size_t n = 0; n < config.n_sensors; ++n) {
      const double true_distance = norm(current - map.center(truth.sensor_cells[n]));
      if (!(true_distance < config.sensing_radius)) continue;

      double d = true_distance + rng.uniform(0.0, range_quant_span);
      const double branch = rng.uniform();
      if (branch < p_los) {
        d += rng.normal(0.0, config.los_sigma);
      } else if (branch < p_los + config.p_nlos) {
        d += nlos_samples[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(nlos_samples.size()) - 1))];
      } else {
        d += rng.uniform(0.0, config.max_obstacle_error);
      }
      // Contamination draw happens unconditionally so streams stay aligned
      // across outlier-probability sweeps.
      const double outlier_draw = rng.uniform();
      if (outlier_draw < config.outlier_probability) d += config.outlier_distance;

      slots[t].ranges.push_back({n, std::max(d, 0.0)});
    }
  }
  return slots;
}

std::vector<double> synthesize_nlos_db(const std::vector<GmComponent>& mixture, std::size_t count,
                                       Rng& rng) {
  if (count < 1) throw std::invalid_argument("nlos db: sample count must be at least 1");
  if (mixture.empty()) throw std::invalid_argument("nlos db: mixture is empty");
  double total_weight = 0.0;
  for (const GmComponent& c : mixture) total_weight += c.weight;
  if (!(total_weight > 0.0)) throw std::invalid_argument("nlos db: mixture weights sum to zero");

  constexpr std::size_t kMaxAttemptsPerSample = 1000;
  std::vector<double> samples;
  samples.reserve(count);
  while (samples.size() < count) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxAttemptsPerSample; ++attempt) {
      double pick = rng.uniform() * total_weight;
      std::size_t comp = 0;
      for (; comp + 1 < mixture.size(); ++comp) {
        if (pick < mixture[comp].weight) break;
        pick -= mixture[comp].weight;
      }
      const double s = rng.normal(mixture[comp].mean, mixture[comp].sigma);
      if (s >= 0.0) {
        samples.push_back(s);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw std::runtime_error("nlos db: mixture mass is concentrated at negative values");
  }
  return samples;
}

std::vector<GmComponent> default_nlos_mixture() {
  // Multipath detours in a long tunnel put substantial mass well past 20 m,
  // with the spread growing along the bias.
  return {{0.25, 4.0, 1.5}, {0.25, 9.0, 2.5}, {0.20, 15.0, 3.5}, {0.17, 22.0, 4.5},
          {0.13, 28.0, 5.0}};
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kSlat: return "slat";
    case Mode::kTrackingOnly: return "tracking";
    case Mode::kLocalizationOnly: return "localization";
  }
  throw std::invalid_argument("unknown mode");
}

Mode parse_mode(const std::string& name) {
  if (name == "slat") return Mode::kSlat;
  if (name == "tracking") return Mode::kTrackingOnly;
  if (name == "localization") return Mode::kLocalizationOnly;
  throw std::invalid_argument("unknown mode '" + name + "' (expected slat|tracking|localization)");
}

const ModeResult& McResult::for_mode(Mode mode) const {
  for (const ModeResult& r : modes) {
    if (r.mode == mode) return r;
  }
  throw std::invalid_argument("no result for requested mode");
}

namespace {

struct PreparedScenario {
  CellMap map;
  ImuModel imu;
  RangingNoiseModel ranging;
  std::vector<double> nlos_samples;  // raw database, used by the synthesizer
};

PreparedScenario prepare_scenario(const ScenarioConfig& config) {
  config.validate();

  CellMap map = config.map_path.empty()
                    ? [&] {
                        Rng rng(config.seed, Rng::Stream::kMap, 0);
                        return generate_corridor_map(config.n_cells, config.corridor_pitch,
                                                     config.corridor_width, config.corridor_height,
                                                     config.corridor_jitter, rng);
                      }()
                    : load_cell_map(config.map_path);
  if (map.size() != config.n_cells)
    throw std::invalid_argument("config: N_c does not match the cell map (" +
                                std::to_string(map.size()) + " cells)");

  // The estimator only ever sees the mixture fitted to the database; the
  // synthesizer draws from the raw samples.
  std::vector<double> samples;
  std::vector<GmComponent> fitted;
  if (config.p_nlos > 0.0) {
    if (config.nlos_db_path.empty()) {
      Rng rng(config.seed, Rng::Stream::kNlosDb, 0);
      samples = synthesize_nlos_db(default_nlos_mixture(), config.nlos_db_size, rng);
    } else {
      samples = read_sample_db(config.nlos_db_path);
    }
    if (samples.empty())
      throw std::invalid_argument("config: NLOS database is empty but p_nlos > 0");
    fitted = fit_gm(samples, config.n_gm_components);
  }

  ImuModel imu{config.imu_sigma, config.quantization_length, config.sample_interval};
  RangingNoiseModel ranging{std::max(0.0, 1.0 - config.p_nlos - config.p_obs),
                            config.p_nlos,
                            config.p_obs,
                            config.los_sigma,
                            std::move(fitted),
                            config.max_obstacle_error,
                            config.quantization_length};
  imu.validate();
  ranging.validate();
  return {std::move(map), imu, ranging, std::move(samples)};
}

struct RunOutput {
  std::vector<RunMetrics> per_mode;
  std::vector<std::uint64_t> iterations;  // per mode
};

RunOutput simulate_run(const ScenarioConfig& config, const PreparedScenario& scenario,
                       const std::vector<Mode>& modes, std::size_t run_index) {
  Rng rng(config.seed, Rng::Stream::kRun, run_index);
  const CellMap& map = scenario.map;

  Deployment dep = deploy_sensors(config, map, rng);
  GroundTruth truth;
  truth.initial_target_cell = 0;
  truth.sensor_cells = dep.cells;
  truth.target_cells = generate_track(config.n_slots, map.size(), rng);
  const std::vector<SlotInput> slots =
      synthesize_measurements(config, truth, map, scenario.nlos_samples, rng);

  RunOutput out;
  out.per_mode.resize(modes.size());
  out.iterations.assign(modes.size(), 0);
  const Pmf target_prior = Pmf::delta(map.size(), truth.initial_target_cell);

  for (std::size_t m = 0; m < modes.size(); ++m) {
    Engine engine(map, scenario.imu, scenario.ranging, target_prior, dep.priors, modes[m],
                  config.belief_threshold, config.knn_k);
    RunMetrics& metrics = out.per_mode[m];
    // The position error is measured between cells: the estimate is mapped
    // to its nearest cell, so the error takes finitely many values and is
    // zero exactly when the estimated cell is the true one.
    const auto cell_error = [&map](const Vec3& estimate, CellId true_cell) {
      return cell_distance(map, nearest_cell(map, estimate), true_cell);
    };
    try {
      for (std::size_t t = 0; t < config.n_slots; ++t) {
        engine.step(slots[t]);
        metrics.target_error.push_back(
            cell_error(engine.target_estimate(), truth.target_cells[t]));
        std::vector<double> sensor_errors(config.n_sensors);
        for (std::size_t n = 0; n < config.n_sensors; ++n) {
          sensor_errors[n] = cell_error(engine.sensor_estimate(n), truth.sensor_cells[n]);
        }
        metrics.sensor_error.push_back(std::move(sensor_errors));
      }
    } catch (const BeliefCollapseError& e) {
      metrics.collapsed = true;
      metrics.collapse_variable = e.variable();
      metrics.target_error.clear();
      metrics.sensor_error.clear();
    }
    out.iterations[m] = engine.stats().source_cell_iterations;
  }
  return out;
}

double rms(double sum_sq, std::size_t count) {
  return count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
}

}  // namespace

McResult run_monte_carlo(const ScenarioConfig& config, const std::vector<Mode>& modes,
                         unsigned n_threads) {
  if (modes.empty()) throw std::invalid_argument("run_monte_carlo: no modes requested");
  const PreparedScenario scenario = prepare_scenario(config);

  std::vector<RunOutput> outputs(config.n_runs);
  unsigned workers = n_threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n_threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(config.n_runs));
  if (workers <= 1) {
    for (std::size_t r = 0; r < config.n_runs; ++r) {
      outputs[r] = simulate_run(config, scenario, modes, r);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t r = next.fetch_add(1);
          if (r >= config.n_runs) break;
          outputs[r] = simulate_run(config, scenario, modes, r);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Reduce in run-index order so the aggregate is independent of scheduling.
  McResult result;
  result.modes.resize(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    ModeResult& mode_result = result.modes[m];
    mode_result.mode = modes[m];
    std::vector<double> target_sq(config.n_slots, 0.0);
    std::vector<double> sensor_sq(config.n_slots, 0.0);
    std::size_t valid_runs = 0;

    for (std::size_t r = 0; r < config.n_runs; ++r) {
      const RunMetrics& metrics = outputs[r].per_mode[m];
      mode_result.source_cell_iterations += outputs[r].iterations[m];
      RunSummary summary;
      summary.run = r;
      summary.collapsed = metrics.collapsed;
      summary.collapse_variable = metrics.collapse_variable;
      if (metrics.collapsed) {
        ++mode_result.collapse_count;
        mode_result.runs.push_back(std::move(summary));
        continue;
      }
      ++valid_runs;
      double run_target_sq = 0.0;
      double run_sensor_sq = 0.0;
      for (std::size_t t = 0; t < config.n_slots; ++t) {
        const double te = metrics.target_error[t];
        target_sq[t] += te * te;
        run_target_sq += te * te;
        mode_result.pooled_target_errors.push_back(te);
        for (double se : metrics.sensor_error[t]) {
          sensor_sq[t] += se * se;
          run_sensor_sq += se * se;
          mode_result.pooled_sensor_errors.push_back(se);
        }
      }
      summary.target_rmse = rms(run_target_sq, config.n_slots);
      summary.sensor_rmse = rms(run_sensor_sq, config.n_slots * config.n_sensors);
      mode_result.runs.push_back(std::move(summary));
    }

    mode_result.target_rmse_by_slot.resize(config.n_slots);
    mode_result.sensor_rmse_by_slot.resize(config.n_slots);
    for (std::size_t t = 0; t < config.n_slots; ++t) {
      mode_result.target_rmse_by_slot[t] = rms(target_sq[t], valid_runs);
      mode_result.sensor_rmse_by_slot[t] = rms(sensor_sq[t], valid_runs * config.n_sensors);
      mode_result.mean_target_rmse += mode_result.target_rmse_by_slot[t];
      mode_result.mean_sensor_rmse += mode_result.sensor_rmse_by_slot[t];
    }
    mode_result.mean_target_rmse /= static_cast<double>(config.n_slots);
    mode_result.mean_sensor_rmse /= static_cast<double>(config.n_slots);
  }
  return result;
}

void write_rmse_csv(const McResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "slot,mode,target_rmse,sensor_rmse\n";
  for (const ModeResult& mode_result : result.modes) {
    for (std::size_t t = 0; t < mode_result.target_rmse_by_slot.size(); ++t) {
      out << (t + 1) << ',' << mode_name(mode_result.mode) << ','
          << fmt(mode_result.target_rmse_by_slot[t]) << ','
          << fmt(mode_result.sensor_rmse_by_slot[t]) << '\n';
    }
  }
}

namespace {

void write_cdf_rows(std::ofstream& out, const char* mode, const char* variable,
                    std::vector<double> errors) {
  std::sort(errors.begin(), errors.end());
  const double n = static_cast<double>(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    out << mode << ',' << variable << ',' << fmt(errors[i]) << ','
        << fmt(static_cast<double>(i + 1) / n) << '\n';
  }
}

}  // namespace

void write_cdf_csv(const McResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "mode,variable,error,cum_prob\n";
  for (const ModeResult& mode_result : result.modes) {
    write_cdf_rows(out, mode_name(mode_result.mode), "target", mode_result.pooled_target_errors);
    write_cdf_rows(out, mode_name(mode_result.mode), "sensor", mode_result.pooled_sensor_errors);
  }
}

void write_runs_jsonl(const McResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const ModeResult& mode_result : result.modes) {
    for (const RunSummary& run : mode_result.runs) {
      nlohmann::json j = {{"run", run.run},
                          {"mode", mode_name(mode_result.mode)},
                          {"target_rmse", run.target_rmse},
                          {"sensor_rmse", run.sensor_rmse},
                          {"collapsed", run.collapsed}};
      if (run.collapsed) j["collapse_variable"] = run.collapse_variable;
      out << j.dump() << '\n';
    }
  }
}

void write_summary_json(const McResult& result, const std::string& path) {
  nlohmann::json modes = nlohmann::json::object();
  for (const ModeResult& mode_result : result.modes) {
    modes[mode_name(mode_result.mode)] = {
        {"mean_target_rmse", mode_result.mean_target_rmse},
        {"mean_sensor_rmse", mode_result.mean_sensor_rmse},
        {"collapses", mode_result.collapse_count},
        {"source_cell_iterations", mode_result.source_cell_iterations}};
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << nlohmann::json{{"modes", modes}}.dump(2) << '\n';
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;

  ScenarioConfig c;
  c.n_cells = j.value("N_c", c.n_cells);
  c.n_sensors = j.value("N_s", c.n_sensors);
  c.n_slots = j.value("N_T", c.n_slots);
  c.sample_interval = j.value("Ts", c.sample_interval);
  c.sensor_sigma = j.value("sigma_S", c.sensor_sigma);
  c.p_nlos = j.value("p_nlos", c.p_nlos);
  c.p_obs = j.value("p_obs", c.p_obs);
  c.imu_sigma = j.value("sigma_u", c.imu_sigma);
  c.los_sigma = j.value("sigma_w0", c.los_sigma);
  c.sensing_radius = j.value("d_th", c.sensing_radius);
  c.max_obstacle_error = j.value("d_max", c.max_obstacle_error);
  c.quantization_length = j.value("D", c.quantization_length);
  c.knn_k = j.value("k", c.knn_k);
  c.belief_threshold = j.value("epsilon_m", c.belief_threshold);
  c.n_runs = j.value("n_mc", c.n_runs);
  c.seed = j.value("seed", c.seed);
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  c.outlier_probability = j.value("p_o", c.outlier_probability);
  c.outlier_distance = j.value("d_o", c.outlier_distance);
  c.map_path = j.value("map", c.map_path);
  c.nlos_db_path = j.value("nlos_db", c.nlos_db_path);
  c.corridor_pitch = j.value("pitch", c.corridor_pitch);
  c.corridor_width = j.value("width", c.corridor_width);
  c.corridor_height = j.value("height", c.corridor_height);
  c.corridor_jitter = j.value("jitter", c.corridor_jitter);
  c.n_gm_components = j.value("n_gm", c.n_gm_components);
  c.nlos_db_size = j.value("nlos_db_size", c.nlos_db_size);
  c.validate();
  return c;
}

void save_scenario_config(const ScenarioConfig& c, const std::string& path) {
  const nlohmann::json j = {{"N_c", c.n_cells},
                            {"N_s", c.n_sensors},
                            {"N_T", c.n_slots},
                            {"Ts", c.sample_interval},
                            {"sigma_S", c.sensor_sigma},
                            {"p_nlos", c.p_nlos},
                            {"p_obs", c.p_obs},
                            {"sigma_u", c.imu_sigma},
                            {"sigma_w0", c.los_sigma},
                            {"d_th", c.sensing_radius},
                            {"d_max", c.max_obstacle_error},
                            {"D", c.quantization_length},
                            {"k", c.knn_k},
                            {"epsilon_m", c.belief_threshold},
                            {"n_mc", c.n_runs},
                            {"seed", c.seed},
                            {"mode", mode_name(c.mode)},
                            {"p_o", c.outlier_probability},
                            {"d_o", c.outlier_distance},
                            {"map", c.map_path},
                            {"nlos_db", c.nlos_db_path},
                            {"pitch", c.corridor_pitch},
                            {"width", c.corridor_width},
                            {"height", c.corridor_height},
                            {"jitter", c.corridor_jitter},
                            {"n_gm", c.n_gm_components},
                            {"nlos_db_size", c.nlos_db_size}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace slatbp::sim
