#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

enum class CloudFormat {
  BinaryXyzF32,  // packed little-endian float32 records: x y z intensity
  AsciiXyz,      // one "x y z" triple per line
};

/// Picks the format from the file extension: ".bin" is binary, ".txt"/".xyz"
/// is ASCII. Anything else is an error.
CloudFormat format_from_extension(const std::filesystem::path& path);

struct LoadStats {
  std::size_t dropped_non_finite = 0;
};

/// Reads a scan. Non-finite points are dropped (count reported via `stats`),
/// structural problems throw: ParseError with the byte offset for a truncated
/// binary record, ParseError with the line number for bad ASCII.
PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat fmt,
                            LoadStats* stats = nullptr);
void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                      CloudFormat fmt);

/// Keeps points with z strictly above the threshold.
PointCloud remove_ground(const PointCloud& cloud, double z_min);

/// Rasterizes a cloud into the binary BEV occupancy grid (see BevGrid for the
/// cell convention). Points outside the ROI square, including its upper
/// boundary, are ignored. Requires roi_side > 0 and grid_size >= 2.
BevGrid to_bev(const PointCloud& cloud, const BevConfig& cfg);

struct PoseRecord {
  std::uint64_t id = 0;
  Se2Pose pose;
};

/// Trajectory CSV with exact header "id,x,y,yaw"; yaw in radians, wrapped to
/// [-pi, pi) on load. Throws ParseError with the line number on malformed
/// rows, FormatError on a wrong header.
std::vector<PoseRecord> load_poses_csv(const std::filesystem::path& path);
void save_poses_csv(const std::filesystem::path& path,
                    const std::vector<PoseRecord>& poses);

}  // namespace ringloc
