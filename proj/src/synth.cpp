#include "ringloc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringloc/descriptor.hpp"
#include "ringloc/radon.hpp"

namespace ringloc {
namespace {

double point_segment_dist2(double px, double py, const Segment& s) {
  const double vx = s.bx - s.ax, vy = s.by - s.ay;
  const double wx = px - s.ax, wy = py - s.ay;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return dx * dx + dy * dy;
}

void check_pose_margin(const SyntheticWorld& world, const Se2Pose& pose,
                       double roi_side) {
  const double margin = 0.5 * world.extent - 0.5 * roi_side;
  if (std::abs(pose.x) > margin || std::abs(pose.y) > margin)
    throw std::invalid_argument(
        "synthetic scan pose too close to the world border");
}

}  // namespace

bool SyntheticWorld::occupied(double wx, double wy) const {
  const double r2 = 0.25 * wall_thickness * wall_thickness;
  for (const Segment& s : segments)
    if (point_segment_dist2(wx, wy, s) <= r2) return true;
  return false;
}

SyntheticWorld generate_world(std::uint64_t seed, const WorldParams& params) {
  if (!(params.extent > 0.0))
    throw std::invalid_argument("generate_world: extent must be positive");
  SyntheticWorld world;
  world.seed = seed;
  world.extent = params.extent;
  world.wall_thickness = params.wall_thickness;

  SplitMix64 rng(seed);
  const double bound = 0.5 * params.extent;
  for (int r = 0; r < params.n_rects; ++r) {
    const double w = rng.uniform(8.0, 50.0);
    const double h = rng.uniform(8.0, 50.0);
    // random heading per building; a world of axis-aligned outlines has one
    // global angular signature and places become confusable for a
    // rotation-equivariant descriptor
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double margin = 0.5 * std::hypot(w, h);
    const double cx = rng.uniform(-bound + margin, bound - margin);
    const double cy = rng.uniform(-bound + margin, bound - margin);
    const double c = std::cos(phi), s = std::sin(phi);
    double px[4], py[4];
    const double hw = 0.5 * w, hh = 0.5 * h;
    const double ox[4] = {-hw, hw, hw, -hw};
    const double oy[4] = {-hh, -hh, hh, hh};
    for (int k = 0; k < 4; ++k) {
      px[k] = cx + c * ox[k] - s * oy[k];
      py[k] = cy + s * ox[k] + c * oy[k];
    }
    for (int k = 0; k < 4; ++k)
      world.segments.push_back({px[k], py[k], px[(k + 1) % 4], py[(k + 1) % 4]});
  }
  for (int s = 0; s < params.n_walls; ++s) {
    const double ax = rng.uniform(-bound, bound);
    const double ay = rng.uniform(-bound, bound);
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    const double len = rng.uniform(10.0, 60.0);
    const double bx = std::clamp(ax + len * std::cos(ang), -bound, bound);
    const double by = std::clamp(ay + len * std::sin(ang), -bound, bound);
    world.segments.push_back({ax, ay, bx, by});
  }
  return world;
}

BevGrid render_scan(const SyntheticWorld& world, const Se2Pose& pose,
                    const BevConfig& cfg, Exec exec) {
  check_pose_margin(world, pose, cfg.roi_side);
  BevGrid grid(cfg.grid_size, cfg.roi_side / cfg.grid_size);
  const double half = 0.5 * cfg.roi_side;
  const double res = grid.resolution;
  const double c = std::cos(pose.yaw), s = std::sin(pose.yaw);

  // only walls that can intersect the ROI disc matter for this scan
  const double reach = half * std::sqrt(2.0) + world.wall_thickness;
  std::vector<const Segment*> near;
  for (const Segment& seg : world.segments)
    if (point_segment_dist2(pose.x, pose.y, seg) <= reach * reach)
      near.push_back(&seg);
  if (near.empty()) return grid;
  const double r2 = 0.25 * world.wall_thickness * world.wall_thickness;

  constexpr int kSub = 4;
  auto render_row = [&](int i) {
    for (int j = 0; j < grid.size; ++j) {
      std::uint8_t hit = 0;
      for (int b = 0; b < kSub && !hit; ++b) {
        const double ys = half - (i + (b + 0.5) / kSub) * res;
        for (int a = 0; a < kSub && !hit; ++a) {
          const double xs = -half + (j + (a + 0.5) / kSub) * res;
          const double wx = pose.x + c * xs - s * ys;
          const double wy = pose.y + s * xs + c * ys;
          for (const Segment* seg : near) {
            if (point_segment_dist2(wx, wy, *seg) <= r2) {
              hit = 1;
              break;
            }
          }
        }
      }
      grid.at(i, j) = hit;
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.size; ++i) render_row(i);
  } else {
    for (int i = 0; i < grid.size; ++i) render_row(i);
  }
  return grid;
}

PointCloud sample_scan_points(const SyntheticWorld& world, const Se2Pose& pose,
                              double roi_side) {
  check_pose_margin(world, pose, roi_side);
  const double half = 0.5 * roi_side;
  const double c = std::cos(pose.yaw), s = std::sin(pose.yaw);
  PointCloud cloud;

  auto emit_sensor_frame = [&](double wx, double wy, float z) {
    const double dx = wx - pose.x, dy = wy - pose.y;
    const double xs = c * dx + s * dy;
    const double ys = -s * dx + c * dy;
    if (std::abs(xs) >= half || std::abs(ys) >= half) return;
    cloud.points.push_back(
        {static_cast<float>(xs), static_cast<float>(ys), z});
  };

  constexpr double kWallStep = 0.25;
  constexpr float kWallLayers[] = {0.4f, 0.9f, 1.4f};
  for (const Segment& seg : world.segments) {
    const double len = std::hypot(seg.bx - seg.ax, seg.by - seg.ay);
    const int n = std::max(1, static_cast<int>(std::ceil(len / kWallStep)));
    for (int k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      const double wx = seg.ax + t * (seg.bx - seg.ax);
      const double wy = seg.ay + t * (seg.by - seg.ay);
      for (float z : kWallLayers) emit_sensor_frame(wx, wy, z);
    }
  }

  // ground carpet below the removal threshold, sensor-relative
  constexpr double kGroundStep = 3.5;
  for (double gy = -half + 0.5 * kGroundStep; gy < half; gy += kGroundStep)
    for (double gx = -half + 0.5 * kGroundStep; gx < half; gx += kGroundStep)
      cloud.points.push_back(
          {static_cast<float>(gx), static_cast<float>(gy), -1.7f});
  return cloud;
}

std::vector<Se2Pose> loop_trajectory(double half_side, double spacing,
                                     int count) {
  if (!(half_side > 0.0) || !(spacing > 0.0) || count < 1)
    throw std::invalid_argument("loop_trajectory: bad parameters");
  const double rho = 0.5 * half_side;  // corner radius
  const double e = half_side - rho;    // straight half-length
  const double straight = 2.0 * e;
  const double arc = 0.5 * kPi * rho;
  const double period = 4.0 * straight + 4.0 * arc;

  auto pose_at = [&](double s) -> Se2Pose {
    s = std::fmod(s, period);
    if (s < 0) s += period;
    struct Corner {
      double cx, cy, a0;
    };
    // counter-clockwise, starting on the bottom edge heading +x
    const Corner corners[4] = {{e, -e, -0.5 * kPi},
                               {e, e, 0.0},
                               {-e, e, 0.5 * kPi},
                               {-e, -e, kPi}};
    const double start[4] = {-e, -e, e, e};  // edge start coordinate
    const double sgn[4] = {1.0, 1.0, -1.0, -1.0};
    for (int leg = 0; leg < 4; ++leg) {
      if (s < straight) {
        const double u = start[leg] + sgn[leg] * s;
        switch (leg) {
          case 0: return make_pose(u, -half_side, 0.0);
          case 1: return make_pose(half_side, u, 0.5 * kPi);
          case 2: return make_pose(u, half_side, kPi);
          default: return make_pose(-half_side, u, -0.5 * kPi);
        }
      }
      s -= straight;
      if (s < arc) {
        const double a = corners[leg].a0 + s / rho;
        return make_pose(corners[leg].cx + rho * std::cos(a),
                         corners[leg].cy + rho * std::sin(a), a + 0.5 * kPi);
      }
      s -= arc;
    }
    return make_pose(-e, -half_side, 0.0);  // unreachable
  };

  std::vector<Se2Pose> poses;
  poses.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) poses.push_back(pose_at(k * spacing));
  return poses;
}

double exhaustive_rotation_oracle(const BevGrid& query, const BevGrid& map,
                                  int n_theta, int n_tau) {
  const TiRing q = ti_ring(radon(query, n_theta, n_tau));
  if (q.norm <= 0.0)
    throw DegenerateGeometryError("exhaustive_rotation_oracle: empty query");
  const Image map_img = to_image(map);
  const double dtheta = 2.0 * kPi / n_theta;

  int best_m = 0;
  double best_score = -2.0;
  for (int m = 0; m < n_theta; ++m) {
    const Image rot = rotate_image(map_img, m * dtheta);
    const TiRing d = ti_ring(radon(rot, n_theta, n_tau, map.resolution));
    if (d.norm <= 0.0) continue;
    double dot = 0.0;
    for (std::size_t k = 0; k < q.data.size(); ++k) dot += q.data[k] * d.data[k];
    const double score = dot / (q.norm * d.norm);
    if (score > best_score) {
      best_score = score;
      best_m = m;
    }
  }
  return wrap_angle(best_m * dtheta);
}

}  // namespace ringloc
