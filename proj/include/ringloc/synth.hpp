#pragma once

#include <cstdint>
#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/image.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

/// SplitMix64: tiny, seed-stable across platforms. Used everywhere synthetic
/// data is generated so identical seeds give identical worlds on any machine.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

struct Segment {
  double ax = 0.0, ay = 0.0, bx = 0.0, by = 0.0;
};

struct WorldParams {
  int n_rects = 48;              // rotated rectangle outlines
  int n_walls = 96;              // free-standing wall segments
  double extent = 500.0;         // world is [-extent/2, extent/2]^2, meters
  double wall_thickness = 1.4;   // meters
};

/// Obstacle map made of wall segments in world coordinates. Deterministic in
/// the seed.
struct SyntheticWorld {
  std::uint64_t seed = 0;
  double extent = 0.0;
  double wall_thickness = 0.0;
  std::vector<Segment> segments;

  /// True when (wx, wy) lies within half a wall thickness of any segment.
  bool occupied(double wx, double wy) const;
};

SyntheticWorld generate_world(std::uint64_t seed, const WorldParams& params = {});

/// Renders the occupancy BEV a sensor at `pose` would observe: each cell is
/// supersampled 4x4 in the sensor frame and marked occupied if any sample
/// hits a wall. The pose must stay at least roi/2 away from the world border.
BevGrid render_scan(const SyntheticWorld& world, const Se2Pose& pose,
                    const BevConfig& cfg, Exec exec = Exec::Parallel);

/// Point-cloud view of the same scene: walls are sampled along their length
/// at a fixed step on several z layers, plus a coarse ground carpet below
/// z = -1.6 so ground removal has something to do. Sensor-frame coordinates,
/// ROI-clipped, fully deterministic.
PointCloud sample_scan_points(const SyntheticWorld& world, const Se2Pose& pose,
                              double roi_side);

/// Rounded-rectangle loop trajectory inside the world, `count` poses spaced
/// `spacing` meters apart, yaw tangent to the path.
std::vector<Se2Pose> loop_trajectory(double half_side, double spacing, int count);

/// Brute-force orientation reference: rasterizes every candidate rotation of
/// the map grid, runs it through the full descriptor pipeline, and returns
/// the angle whose descriptor best matches the query's at zero row shift.
/// Independent of the correlation search it validates.
double exhaustive_rotation_oracle(const BevGrid& query, const BevGrid& map,
                                  int n_theta, int n_tau);

}  // namespace ringloc
