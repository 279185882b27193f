#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slatbp/engine.hpp"
#include "slatbp/gm_fit.hpp"
#include "slatbp/json_io.hpp"
#include "slatbp/rng.hpp"
#include "slatbp/sim.hpp"

namespace {

using nlohmann::json;

std::uint64_t fallback_seed() {
  if (const char* env = std::getenv("SLATBP_SEED")) {
    return std::stoull(env);
  }
  return 1;
}

std::vector<slatbp::GmComponent> load_mixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  const json& gm = j.is_array() ? j : j.at("gm");
  std::vector<slatbp::GmComponent> mixture;
  for (const json& comp : gm) {
    mixture.push_back({comp.at("weight").get<double>(), comp.at("mean").get<double>(),
                       comp.at("sigma").get<double>()});
  }
  return mixture;
}

slatbp::Pmf parse_prior(const json& spec, const slatbp::CellMap& map) {
  if (spec.contains("cell")) {
    return slatbp::Pmf::delta(map.size(), spec.at("cell").get<std::size_t>());
  }
  if (spec.contains("weights")) {
    return slatbp::Pmf(spec.at("weights").get<std::vector<double>>());
  }
  if (spec.contains("center")) {
    const json& c = spec.at("center");
    return slatbp::discretize_gaussian_prior(map, {c.at(0), c.at(1), c.at(2)},
                                             spec.at("sigma").get<double>());
  }
  throw std::runtime_error("prior spec needs one of: cell, weights, center+sigma");
}

int run_command(const std::string& map_path, const std::string& model_path,
                const std::string& slots_path, const std::string& priors_path,
                const std::string& mode_name, double epsilon, std::size_t k, double sigma_u,
                double ts, const std::string& beliefs_out, const std::string& estimates_out) {
  const slatbp::CellMap map = slatbp::load_cell_map(map_path);
  const slatbp::RangingNoiseModel ranging = slatbp::load_ranging_model(model_path);
  const slatbp::ImuModel imu{sigma_u, ranging.quantization_length, ts};

  std::ifstream priors_in(priors_path);
  if (!priors_in) throw std::runtime_error("cannot open " + priors_path);
  json priors_json;
  priors_in >> priors_json;
  const slatbp::Pmf target_prior = parse_prior(priors_json.at("target"), map);
  std::vector<slatbp::Pmf> sensor_priors;
  for (const json& spec : priors_json.at("sensors")) sensor_priors.push_back(parse_prior(spec, map));

  slatbp::Engine engine(map, imu, ranging, target_prior, sensor_priors,
                        slatbp::sim::parse_mode(mode_name), epsilon, k);

  std::ofstream beliefs;
  if (!beliefs_out.empty()) {
    beliefs.open(beliefs_out);
    if (!beliefs) throw std::runtime_error("cannot write " + beliefs_out);
  }
  std::ofstream estimates;
  if (!estimates_out.empty()) {
    estimates.open(estimates_out);
    if (!estimates) throw std::runtime_error("cannot write " + estimates_out);
    estimates << "slot,variable,x,y,z\n";
  }

  const auto slots = slatbp::read_slots_jsonl(slots_path);
  for (const slatbp::SlotInput& input : slots) {
    engine.step(input);
    if (beliefs.is_open()) {
      std::vector<slatbp::Pmf> sensor_beliefs;
      for (std::size_t n = 0; n < engine.sensor_count(); ++n) {
        sensor_beliefs.push_back(engine.sensor_belief(n));
      }
      beliefs << slatbp::belief_snapshot_json(engine.time_slot(), engine.target_belief(),
                                              sensor_beliefs)
              << '\n';
    }
    if (estimates.is_open()) {
      const auto row = [&](const std::string& variable, const slatbp::Vec3& p) {
        estimates << engine.time_slot() << ',' << variable << ',' << p.x << ',' << p.y << ','
                  << p.z << '\n';
      };
      estimates << std::setprecision(12);
      row("target", engine.target_estimate());
      for (std::size_t n = 0; n < engine.sensor_count(); ++n) {
        row("sensor_" + std::to_string(n), engine.sensor_estimate(n));
      }
    }
  }
  return 0;
}

int metrics_command(const std::string& dir) {
  std::ifstream in(dir + "/summary.json");
  if (!in) throw std::runtime_error("cannot open " + dir + "/summary.json");
  json summary;
  in >> summary;
  std::cout << std::left << std::setw(14) << "mode" << std::right << std::setw(18)
            << "target_rmse_m" << std::setw(18) << "sensor_rmse_m" << std::setw(12) << "collapses"
            << '\n';
  for (const auto& [name, entry] : summary.at("modes").items()) {
    std::cout << std::left << std::setw(14) << name << std::right << std::fixed
              << std::setprecision(4) << std::setw(18) << entry.at("mean_target_rmse").get<double>()
              << std::setw(18) << entry.at("mean_sensor_rmse").get<double>() << std::setw(12)
              << entry.at("collapses").get<std::size_t>() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-cell simultaneous sensor localization and target tracking"};
  app.require_subcommand(1);
  int exit_code = 0;

  // gen-map
  auto* gen_map = app.add_subcommand("gen-map", "Generate a corridor cell map");
  std::size_t gm_cells = 44;
  double gm_pitch = 5.0, gm_width = 5.0, gm_height = 5.0, gm_jitter = 1.0;
  std::uint64_t gm_seed = fallback_seed();
  std::string gm_out;
  gen_map->add_option("--cells", gm_cells, "Number of cells")->check(CLI::PositiveNumber);
  gen_map->add_option("--pitch", gm_pitch, "Cell spacing along the corridor, m");
  gen_map->add_option("--width", gm_width, "Cell extent across the corridor, m");
  gen_map->add_option("--height", gm_height, "Cell extent in height, m");
  gen_map->add_option("--jitter", gm_jitter, "Lateral center jitter bound, m");
  gen_map->add_option("--seed", gm_seed, "Random seed");
  gen_map->add_option("--out", gm_out, "Output map JSON path")->required();
  gen_map->callback([&] {
    slatbp::Rng rng(gm_seed, slatbp::Rng::Stream::kMap, 0);
    slatbp::save_cell_map(
        slatbp::sim::generate_corridor_map(gm_cells, gm_pitch, gm_width, gm_height, gm_jitter, rng),
        gm_out);
  });

  // gen-nlos-db
  auto* gen_db = app.add_subcommand("gen-nlos-db", "Synthesize an NLOS ranging-error database");
  std::string db_gm_path, db_out;
  std::size_t db_count = 1164;
  std::uint64_t db_seed = fallback_seed();
  gen_db->add_option("--gm", db_gm_path, "Mixture JSON (array of {weight,mean,sigma}); default: built-in");
  gen_db->add_option("--count", db_count, "Number of samples")->check(CLI::PositiveNumber);
  gen_db->add_option("--seed", db_seed, "Random seed");
  gen_db->add_option("--out", db_out, "Output sample file (one value per line)")->required();
  gen_db->callback([&] {
    const auto mixture =
        db_gm_path.empty() ? slatbp::sim::default_nlos_mixture() : load_mixture(db_gm_path);
    slatbp::Rng rng(db_seed, slatbp::Rng::Stream::kNlosDb, 0);
    slatbp::write_sample_db(slatbp::sim::synthesize_nlos_db(mixture, db_count, rng), db_out);
  });

  // fit-noise
  auto* fit = app.add_subcommand("fit-noise", "Fit the NLOS mixture and emit a ranging model");
  std::string fit_samples, fit_out;
  std::size_t fit_components = 5;
  double fit_p_nlos = 0.17, fit_p_obs = 0.03, fit_sigma_w0 = 1.0, fit_d_max = 30.0, fit_quant = 5.0;
  fit->add_option("--samples", fit_samples, "NLOS sample database")->required();
  fit->add_option("--components", fit_components, "Mixture components")->check(CLI::PositiveNumber);
  fit->add_option("--p-nlos", fit_p_nlos, "Wall-NLOS probability");
  fit->add_option("--p-obs", fit_p_obs, "Obstacle probability");
  fit->add_option("--sigma-w0", fit_sigma_w0, "LOS noise sigma, m");
  fit->add_option("--d-max", fit_d_max, "Maximum obstacle error, m");
  fit->add_option("--quantization", fit_quant, "Quantization length, m");
  fit->add_option("--out", fit_out, "Output model JSON path")->required();
  fit->callback([&] {
    const auto samples = slatbp::read_sample_db(fit_samples);
    slatbp::RangingNoiseModel model{1.0 - fit_p_nlos - fit_p_obs,
                                    fit_p_nlos,
                                    fit_p_obs,
                                    fit_sigma_w0,
                                    slatbp::fit_gm(samples, fit_components),
                                    fit_d_max,
                                    fit_quant};
    model.validate();
    slatbp::save_ranging_model(model, fit_out);
  });

  // run
  auto* run = app.add_subcommand("run", "Run one engine over a recorded slot stream");
  std::string run_map, run_model, run_slots, run_priors, run_mode = "slat";
  std::string run_beliefs, run_estimates;
  double run_epsilon = 0.05, run_sigma_u = 0.5, run_ts = 1.0;
  std::size_t run_k = 2;
  run->add_option("--map", run_map, "Cell map JSON")->required();
  run->add_option("--model", run_model, "Ranging model JSON")->required();
  run->add_option("--slots", run_slots, "Measurement slots JSONL")->required();
  run->add_option("--priors", run_priors, "Priors JSON ({target:..., sensors:[...]})")->required();
  run->add_option("--mode", run_mode, "slat|tracking|localization");
  run->add_option("--epsilon", run_epsilon, "Belief threshold");
  run->add_option("--k", run_k, "kNN estimation parameter");
  run->add_option("--sigma-u", run_sigma_u, "IMU noise sigma, m/s");
  run->add_option("--ts", run_ts, "Sampling interval, s");
  run->add_option("--out-beliefs", run_beliefs, "Belief snapshots JSONL output");
  run->add_option("--out-estimates", run_estimates, "Estimates CSV output");
  run->callback([&] {
    exit_code = run_command(run_map, run_model, run_slots, run_priors, run_mode, run_epsilon,
                            run_k, run_sigma_u, run_ts, run_beliefs, run_estimates);
  });

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo batch over one or more modes");
  std::string mc_config, mc_modes = "slat,tracking,localization", mc_out;
  unsigned mc_threads = 0;
  mc->add_option("--config", mc_config, "Scenario config JSON")->required();
  mc->add_option("--modes", mc_modes, "Comma-separated mode list");
  mc->add_option("--out", mc_out, "Output directory")->required();
  mc->add_option("--threads", mc_threads, "Worker threads (0 = machine parallelism)");
  mc->callback([&] {
    slatbp::sim::ScenarioConfig config = slatbp::sim::load_scenario_config(mc_config);
    {
      std::ifstream in(mc_config);
      json j;
      in >> j;
      if (!j.contains("seed")) config.seed = fallback_seed();
    }
    std::vector<slatbp::Mode> modes;
    std::stringstream ss(mc_modes);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (!token.empty()) modes.push_back(slatbp::sim::parse_mode(token));
    }
    const auto result = slatbp::sim::run_monte_carlo(config, modes, mc_threads);
    std::filesystem::create_directories(mc_out);
    slatbp::sim::write_rmse_csv(result, mc_out + "/rmse_time.csv");
    slatbp::sim::write_cdf_csv(result, mc_out + "/cdf.csv");
    slatbp::sim::write_runs_jsonl(result, mc_out + "/runs.jsonl");
    slatbp::sim::write_summary_json(result, mc_out + "/summary.json");
    std::size_t collapses = 0;
    for (const auto& mode_result : result.modes) collapses += mode_result.collapse_count;
    if (collapses > 0) {
      std::cerr << collapses << " run(s) ended in belief collapse; see runs.jsonl\n";
      exit_code = 1;
    }
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Print a summary table for an mc output directory");
  std::string metrics_dir;
  metrics->add_option("--dir", metrics_dir, "Directory written by mc")->required();
  metrics->callback([&] { exit_code = metrics_command(metrics_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
