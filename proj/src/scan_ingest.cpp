#include "ringloc/scan_ingest.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "on-disk formats are little-endian; big-endian hosts need swaps");

namespace ringloc {
namespace {

bool all_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<char> buf(static_cast<std::size_t>(size));
  if (size > 0 && !in.read(buf.data(), size))
    throw IoError("read failed: " + path.string());
  return buf;
}

PointCloud load_binary(const std::filesystem::path& path, LoadStats* stats) {
  const std::vector<char> buf = read_all(path);
  constexpr std::size_t kRecord = 4 * sizeof(float);
  if (buf.size() % kRecord != 0)
    throw ParseError("truncated record in " + path.string(),
                     static_cast<long long>(buf.size() - buf.size() % kRecord));
  const std::size_t n = buf.size() / kRecord;
  PointCloud cloud;
  cloud.points.reserve(n);
  cloud.intensity.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    float rec[4];
    std::memcpy(rec, buf.data() + i * kRecord, kRecord);
    const Point p{rec[0], rec[1], rec[2]};
    if (!all_finite(p) || !std::isfinite(rec[3])) {
      if (stats) ++stats->dropped_non_finite;
      continue;
    }
    cloud.points.push_back(p);
    cloud.intensity.push_back(rec[3]);
  }
  return cloud;
}

PointCloud load_ascii(const std::filesystem::path& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  PointCloud cloud;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z))
      throw ParseError("bad point on line " + std::to_string(line_no) + " of " +
                           path.string(),
                       line_no);
    std::string extra;
    if (ss >> extra)
      throw ParseError("trailing tokens on line " + std::to_string(line_no) +
                           " of " + path.string(),
                       line_no);
    const Point p{static_cast<float>(x), static_cast<float>(y),
                  static_cast<float>(z)};
    if (!all_finite(p)) {
      if (stats) ++stats->dropped_non_finite;
      continue;
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

CloudFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".bin") return CloudFormat::BinaryXyzF32;
  if (ext == ".txt" || ext == ".xyz") return CloudFormat::AsciiXyz;
  throw FormatError("unknown point cloud extension: " + path.string());
}

PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat fmt,
                            LoadStats* stats) {
  return fmt == CloudFormat::BinaryXyzF32 ? load_binary(path, stats)
                                          : load_ascii(path, stats);
}

void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                      CloudFormat fmt) {
  std::ofstream out(path, fmt == CloudFormat::BinaryXyzF32
                              ? std::ios::binary
                              : std::ios::out);
  if (!out) throw IoError("cannot write " + path.string());
  if (fmt == CloudFormat::BinaryXyzF32) {
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Point& p = cloud.points[i];
      const float rec[4] = {p.x, p.y, p.z,
                            cloud.has_intensity() ? cloud.intensity[i] : 0.0f};
      out.write(reinterpret_cast<const char*>(rec), sizeof rec);
    }
  } else {
    std::string text;
    for (const Point& p : cloud.points) {
      append_double(text, p.x);
      text += ' ';
      append_double(text, p.y);
      text += ' ';
      append_double(text, p.z);
      text += '\n';
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

PointCloud remove_ground(const PointCloud& cloud, double z_min) {
  PointCloud out;
  out.points.reserve(cloud.points.size());
  const bool with_intensity = cloud.has_intensity();
  if (with_intensity) out.intensity.reserve(cloud.points.size());
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (cloud.points[i].z > z_min) {
      out.points.push_back(cloud.points[i]);
      if (with_intensity) out.intensity.push_back(cloud.intensity[i]);
    }
  }
  return out;
}

BevGrid to_bev(const PointCloud& cloud, const BevConfig& cfg) {
  if (!(cfg.roi_side > 0.0)) throw DimensionError("to_bev: roi_side must be > 0");
  if (cfg.grid_size < 2) throw DimensionError("to_bev: grid_size must be >= 2");
  BevGrid grid(cfg.grid_size, cfg.roi_side / cfg.grid_size);
  const double half = 0.5 * cfg.roi_side;
  const double inv_res = cfg.grid_size / cfg.roi_side;
  for (const Point& p : cloud.points) {
    const double gx = (p.x + half) * inv_res;
    const double gy = (half - p.y) * inv_res;
    const int col = static_cast<int>(std::floor(gx));
    const int row = static_cast<int>(std::floor(gy));
    if (col < 0 || row < 0 || col >= grid.size || row >= grid.size) continue;
    grid.at(row, col) = 1;
  }
  return grid;
}

std::vector<PoseRecord> load_poses_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "id,x,y,yaw")
    throw FormatError("pose csv must start with header 'id,x,y,yaw': " +
                      path.string());
  std::vector<PoseRecord> out;
  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    PoseRecord rec;
    const char* p = line.data();
    const char* end = p + line.size();
    auto field = [&](auto& value) {
      const auto r = std::from_chars(p, end, value);
      if (r.ec != std::errc())
        throw ParseError("bad pose row at line " + std::to_string(line_no) +
                             " of " + path.string(),
                         line_no);
      p = r.ptr;
    };
    auto comma = [&] {
      if (p >= end || *p != ',')
        throw ParseError("bad pose row at line " + std::to_string(line_no) +
                             " of " + path.string(),
                         line_no);
      ++p;
    };
    field(rec.id);
    comma();
    field(rec.pose.x);
    comma();
    field(rec.pose.y);
    comma();
    field(rec.pose.yaw);
    if (p != end)
      throw ParseError("trailing characters at line " + std::to_string(line_no) +
                           " of " + path.string(),
                       line_no);
    rec.pose.yaw = wrap_angle(rec.pose.yaw);
    out.push_back(rec);
  }
  return out;
}

void save_poses_csv(const std::filesystem::path& path,
                    const std::vector<PoseRecord>& poses) {
  std::string text = "id,x,y,yaw\n";
  for (const PoseRecord& rec : poses) {
    text += std::to_string(rec.id);
    text += ',';
    append_double(text, rec.pose.x);
    text += ',';
    append_double(text, rec.pose.y);
    text += ',';
    append_double(text, rec.pose.yaw);
    text += '\n';
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ringloc
