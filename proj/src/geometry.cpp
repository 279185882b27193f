#include "slatbp/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slatbp {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

namespace {

bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace

CellMap::CellMap(std::vector<Vec3> centers, std::vector<Vec3> extents)
    : centers_(std::move(centers)), extents_(std::move(extents)) {
  if (centers_.empty()) throw std::invalid_argument("cell map: needs at least one cell");
  if (centers_.size() != extents_.size())
    throw std::invalid_argument("cell map: centers/extents size mismatch");
  for (std::size_t c = 0; c < centers_.size(); ++c) {
    if (!finite(centers_[c]))
      throw std::invalid_argument("cell map: non-finite center at cell " + std::to_string(c));
    const Vec3& e = extents_[c];
    if (!finite(e) || e.x < 0.0 || e.y < 0.0 || e.z < 0.0)
      throw std::invalid_argument("cell map: invalid extent at cell " + std::to_string(c));
  }
  quantization_length_ = compute_quantization_length(extents_);
}

const Vec3& CellMap::center(CellId c) const {
  if (c >= centers_.size())
    throw std::out_of_range("cell map: invalid cell id " + std::to_string(c));
  return centers_[c];
}

const Vec3& CellMap::extent(CellId c) const {
  if (c >= extents_.size())
    throw std::out_of_range("cell map: invalid cell id " + std::to_string(c));
  return extents_[c];
}

double cell_distance(const CellMap& map, CellId a, CellId b) {
  return norm(map.center(a) - map.center(b));
}

CellId nearest_cell(const CellMap& map, const Vec3& position) {
  CellId best = 0;
  double best_d = norm(map.center(0) - position);
  for (CellId c = 1; c < map.size(); ++c) {
    const double d = norm(map.center(c) - position);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

double compute_quantization_length(const std::vector<Vec3>& extents) {
  if (extents.empty()) throw std::invalid_argument("quantization length: empty map");
  double d = 0.0;
  for (const Vec3& e : extents) {
    d = std::max(d, std::max(e.x, std::max(e.y, e.z)));
  }
  return d;
}

}  // namespace slatbp
