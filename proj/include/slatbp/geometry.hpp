#pragma once

#include <cstddef>
#include <vector>

namespace slatbp {

using CellId = std::size_t;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
double norm(const Vec3& v);

/// The discretized environment: one record per cell, positions are the cell
/// centers, extents bound the within-cell distance per dimension. The global
/// quantization length is the largest extent over all cells and dimensions;
/// it is always recomputed from the extents, never taken from input.
class CellMap {
 public:
  CellMap(std::vector<Vec3> centers, std::vector<Vec3> extents);

  std::size_t size() const { return centers_.size(); }
  const Vec3& center(CellId c) const;
  const Vec3& extent(CellId c) const;
  const std::vector<Vec3>& centers() const { return centers_; }
  double quantization_length() const { return quantization_length_; }

 private:
  std::vector<Vec3> centers_;
  std::vector<Vec3> extents_;
  double quantization_length_ = 0.0;
};

/// Euclidean distance between the centers of two cells.
double cell_distance(const CellMap& map, CellId a, CellId b);

/// The cell whose center is closest to the given position; ties go to the
/// lower id.
CellId nearest_cell(const CellMap& map, const Vec3& position);

/// Largest per-dimension extent over all cells.
double compute_quantization_length(const std::vector<Vec3>& extents);

}  // namespace slatbp
