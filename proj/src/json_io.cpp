#include "slatbp/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace slatbp {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

Vec3 vec3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw std::runtime_error(std::string(what) + ": expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

CellMap load_cell_map(const std::string& path, std::optional<Vec3> default_extent) {
  const json j = read_json_file(path);
  if (!j.is_array() || j.empty())
    throw std::runtime_error("cell map " + path + ": expected a non-empty JSON array");

  std::map<std::size_t, std::pair<Vec3, Vec3>> records;
  for (const json& rec : j) {
    const std::size_t id = rec.at("id").get<std::size_t>();
    if (records.count(id))
      throw std::runtime_error("cell map " + path + ": duplicate id " + std::to_string(id));
    const Vec3 center = vec3_from_json(rec.at("center"), "cell center");
    Vec3 extent;
    if (rec.contains("extent")) {
      extent = vec3_from_json(rec.at("extent"), "cell extent");
    } else if (default_extent) {
      extent = *default_extent;
    } else {
      throw std::runtime_error("cell map " + path + ": cell " + std::to_string(id) +
                               " has no extent and no default extent was configured");
    }
    records.emplace(id, std::make_pair(center, extent));
  }

  std::vector<Vec3> centers(records.size());
  std::vector<Vec3> extents(records.size());
  for (const auto& [id, rec] : records) {
    if (id >= records.size())
      throw std::runtime_error("cell map " + path + ": ids must cover [0, n); got id " +
                               std::to_string(id));
    centers[id] = rec.first;
    extents[id] = rec.second;
  }
  return CellMap(std::move(centers), std::move(extents));
}

void save_cell_map(const CellMap& map, const std::string& path) {
  json j = json::array();
  for (CellId c = 0; c < map.size(); ++c) {
    j.push_back({{"id", c},
                 {"center", vec3_to_json(map.center(c))},
                 {"extent", vec3_to_json(map.extent(c))}});
  }
  write_text_file(path, j.dump(2) + "\n");
}

RangingNoiseModel load_ranging_model(const std::string& path) {
  const json j = read_json_file(path);
  RangingNoiseModel model;
  model.p_los = j.at("p_los").get<double>();
  model.p_nlos = j.at("p_nlos").get<double>();
  model.p_obs = j.at("p_obs").get<double>();
  model.los_sigma = j.at("sigma_w0").get<double>();
  model.max_obstacle_error = j.at("d_max").get<double>();
  model.quantization_length = j.at("D").get<double>();
  for (const json& comp : j.at("gm")) {
    model.nlos_mixture.push_back({comp.at("weight").get<double>(), comp.at("mean").get<double>(),
                                  comp.at("sigma").get<double>()});
  }
  model.validate();
  return model;
}

void save_ranging_model(const RangingNoiseModel& model, const std::string& path) {
  json gm = json::array();
  for (const GmComponent& c : model.nlos_mixture) {
    gm.push_back({{"weight", c.weight}, {"mean", c.mean}, {"sigma", c.sigma}});
  }
  const json j = {{"p_los", model.p_los},
                  {"p_nlos", model.p_nlos},
                  {"p_obs", model.p_obs},
                  {"sigma_w0", model.los_sigma},
                  {"gm", gm},
                  {"d_max", model.max_obstacle_error},
                  {"D", model.quantization_length}};
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<double> read_sample_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(line, &pos);
    if (!std::isfinite(v))
      throw std::runtime_error("sample db " + path + ": non-finite sample");
    samples.push_back(v);
  }
  return samples;
}

void write_sample_db(const std::vector<double>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (double s : samples) out << s << "\n";
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string belief_snapshot_json(int time_slot, const Pmf& target,
                                 const std::vector<Pmf>& sensors) {
  json sensors_json = json::array();
  for (const Pmf& s : sensors) sensors_json.push_back(s.weights());
  const json j = {{"t", time_slot}, {"target", target.weights()}, {"sensors", sensors_json}};
  return j.dump();
}

std::string slot_input_json(int time_slot, const SlotInput& input) {
  json ranges = json::array();
  for (const RangeMeasurement& r : input.ranges) {
    ranges.push_back({{"sensor", r.sensor}, {"d", r.distance}});
  }
  json j = {{"t", time_slot}, {"ranges", ranges}};
  j["velocity"] = input.velocity ? vec3_to_json(*input.velocity) : json();
  return j.dump();
}

SlotInput parse_slot_input(const std::string& line, int* time_slot) {
  const json j = json::parse(line);
  SlotInput input;
  if (j.contains("velocity") && !j.at("velocity").is_null()) {
    input.velocity = vec3_from_json(j.at("velocity"), "slot velocity");
  }
  for (const json& r : j.at("ranges")) {
    input.ranges.push_back({r.at("sensor").get<std::size_t>(), r.at("d").get<double>()});
  }
  if (time_slot) *time_slot = j.at("t").get<int>();
  return input;
}

std::vector<SlotInput> read_slots_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<int, SlotInput>> slots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int t = 0;
    SlotInput input = parse_slot_input(line, &t);
    slots.emplace_back(t, std::move(input));
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SlotInput> out;
  out.reserve(slots.size());
  for (auto& [t, input] : slots) out.push_back(std::move(input));
  return out;
}

}  // namespace slatbp
