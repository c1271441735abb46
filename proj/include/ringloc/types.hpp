#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ringloc/common.hpp"

namespace ringloc {

struct Point {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
};

/// Raw 3D scan in the sensor frame, meters. Intensity is carried through file
/// round-trips when present but ignored by the localization pipeline.
struct PointCloud {
  std::vector<Point> points;
  std::vector<float> intensity;  // empty, or one value per point

  bool has_intensity() const { return !intensity.empty(); }
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Planar pose: translation in meters, yaw in radians in [-pi, pi),
/// counter-clockwise positive.
struct Se2Pose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

inline Se2Pose make_pose(double x, double y, double yaw) {
  return {x, y, wrap_angle(yaw)};
}

/// a * b: applies b in a's frame.
inline Se2Pose compose(const Se2Pose& a, const Se2Pose& b) {
  const double c = std::cos(a.yaw), s = std::sin(a.yaw);
  return {a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y,
          wrap_angle(a.yaw + b.yaw)};
}

inline Se2Pose inverse(const Se2Pose& p) {
  const double c = std::cos(p.yaw), s = std::sin(p.yaw);
  return {-(c * p.x + s * p.y), -(-s * p.x + c * p.y), wrap_angle(-p.yaw)};
}

/// Pose of `query` expressed in `base`'s frame: base^-1 * query.
inline Se2Pose relative(const Se2Pose& base, const Se2Pose& query) {
  return compose(inverse(base), query);
}

struct BevConfig {
  double roi_side = 140.0;  // meters, sensor-centered square
  int grid_size = 120;      // pixels per side
};

/// Binary occupancy bird's-eye view of a scan.
///
/// Image convention: row 0 holds the +y edge of the ROI, column 0 the -x
/// edge. Cell (i, j) covers the half-open square
///   x in [-roi/2 + j*res, -roi/2 + (j+1)*res)
///   y in ( roi/2 - (i+1)*res, roi/2 - i*res]
/// so the sensor at the origin lands in cell (size/2, size/2) for even sizes.
struct BevGrid {
  int size = 0;              // width == height, pixels
  double resolution = 0.0;   // meters per pixel
  std::vector<std::uint8_t> occupancy;  // row-major size*size, values 0/1

  BevGrid() = default;
  BevGrid(int size_, double resolution_) : size(size_), resolution(resolution_) {
    if (size_ < 2) throw DimensionError("BevGrid: size must be >= 2");
    if (!(resolution_ > 0.0))
      throw DimensionError("BevGrid: resolution must be positive");
    occupancy.assign(static_cast<std::size_t>(size_) * size_, 0);
  }

  std::uint8_t at(int row, int col) const {
    return occupancy[static_cast<std::size_t>(row) * size + col];
  }
  std::uint8_t& at(int row, int col) {
    return occupancy[static_cast<std::size_t>(row) * size + col];
  }
  std::int64_t occupied_count() const {
    std::int64_t n = 0;
    for (auto v : occupancy) n += v;
    return n;
  }
};

/// Pipeline-wide configuration. Defaults match the standard evaluation setup:
/// 140 m ROI on a 120x120 grid (1.1667 m/px), 120 angular and 120 radial bins.
struct RingConfig {
  double roi_side = 140.0;
  int grid_size = 120;
  int n_theta = 120;
  int n_tau = 120;
  double z_min = -1.5;       // ground-removal height threshold, meters
  bool normalize = true;     // cosine-normalize similarity scores
  bool weighted_ls = false;  // weight translation equations by correlation peak

  BevConfig bev() const { return {roi_side, grid_size}; }
};

}  // namespace ringloc
