#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slatbp/engine.hpp"
#include "slatbp/geometry.hpp"
#include "slatbp/noise.hpp"

namespace slatbp {

/// Cell map file: JSON array of {id, center:[x,y,z], extent:[dx,dy,dz]}.
/// Ids must be unique and cover [0, n). Records may omit the extent when a
/// default extent is supplied.
CellMap load_cell_map(const std::string& path,
                      std::optional<Vec3> default_extent = std::nullopt);
void save_cell_map(const CellMap& map, const std::string& path);

/// Ranging model JSON: {p_los, p_nlos, p_obs, sigma_w0, gm:[{weight, mean,
/// sigma}], d_max, D}.
RangingNoiseModel load_ranging_model(const std::string& path);
void save_ranging_model(const RangingNoiseModel& model, const std::string& path);

/// NLOS sample database: plain text, one sample (meters) per line.
std::vector<double> read_sample_db(const std::string& path);
void write_sample_db(const std::vector<double>& samples, const std::string& path);

/// One belief snapshot line: {t, target:[...], sensors:[[...], ...]}.
std::string belief_snapshot_json(int time_slot, const Pmf& target,
                                 const std::vector<Pmf>& sensors);

/// Measurement slot line: {t, velocity:[vx,vy,vz] | null, ranges:[{sensor, d}]}.
std::string slot_input_json(int time_slot, const SlotInput& input);
SlotInput parse_slot_input(const std::string& line, int* time_slot = nullptr);

/// Reads a whole JSONL file of slot inputs, ordered by their t fields.
std::vector<SlotInput> read_slots_jsonl(const std::string& path);

}  // namespace slatbp
