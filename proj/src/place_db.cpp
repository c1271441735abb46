#include "ringloc/place_db.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

namespace ringloc {
namespace {

constexpr char kMagic[8] = {'R', 'I', 'N', 'G', 'D', 'B', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "RINGDB1 is little-endian; big-endian hosts need swaps");

struct Reader {
  std::ifstream in;
  std::filesystem::path path;

  void read(void* dst, std::size_t bytes) {
    if (!in.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes)))
      throw FormatError("truncated database: " + path.string());
  }
  template <typename T>
  T scalar() {
    T v;
    read(&v, sizeof v);
    return v;
  }
};

}  // namespace

void PlaceDatabase::insert(MapEntry entry) {
  if (index_.count(entry.id))
    throw DimensionError("PlaceDatabase: duplicate id " +
                         std::to_string(entry.id));
  if (entry.descriptor.n_theta != entry.sinogram.n_theta ||
      entry.descriptor.n_omega != entry.sinogram.n_tau / 2 + 1)
    throw DimensionError("PlaceDatabase: descriptor does not match sinogram");
  if (!entries_.empty()) {
    const MapEntry& ref = entries_.front();
    if (entry.descriptor.n_theta != ref.descriptor.n_theta ||
        entry.descriptor.n_omega != ref.descriptor.n_omega ||
        entry.sinogram.n_tau != ref.sinogram.n_tau)
      throw DimensionError("PlaceDatabase: entry shape differs from database");
    if (std::abs(entry.sinogram.tau_step_m() - ref.sinogram.tau_step_m()) >
        1e-9 * ref.sinogram.tau_step_m())
      throw DimensionError("PlaceDatabase: entry metric scale differs");
  }
  index_[entry.id] = entries_.size();
  entries_.push_back(std::move(entry));
}

const MapEntry& PlaceDatabase::entry(std::uint64_t id) const {
  const auto it = index_.find(id);
  if (it == index_.end())
    throw DimensionError("PlaceDatabase: no entry with id " + std::to_string(id));
  return entries_[it->second];
}

std::vector<RankedMatch> query_topk(const PlaceDatabase& db, const TiRing& query,
                                    int k, bool normalize, Exec exec) {
  if (db.empty()) throw DimensionError("query_topk: empty database");
  if (k < 1) throw DimensionError("query_topk: k must be >= 1");
  const int n = static_cast<int>(db.size());
  std::vector<RankedMatch> scored(n);
  const auto& entries = db.entries();

  auto score_one = [&](int i) {
    scored[i].entry_id = entries[i].id;
    scored[i].result = similarity(query, entries[i].descriptor, normalize);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) score_one(i);
  } else {
    for (int i = 0; i < n; ++i) score_one(i);
  }

  std::sort(scored.begin(), scored.end(),
            [](const RankedMatch& a, const RankedMatch& b) {
              if (a.result.score != b.result.score)
                return a.result.score > b.result.score;
              return a.entry_id < b.entry_id;
            });
  if (k < n) scored.resize(static_cast<std::size_t>(k));
  return scored;
}

void save_database(const PlaceDatabase& db, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());

  std::uint32_t n_theta = 0, n_tau = 0, n_omega = 0;
  double resolution = 0.0, tau_step_px = 0.0;
  if (!db.empty()) {
    const MapEntry& ref = db.entries().front();
    n_theta = static_cast<std::uint32_t>(ref.sinogram.n_theta);
    n_tau = static_cast<std::uint32_t>(ref.sinogram.n_tau);
    n_omega = static_cast<std::uint32_t>(ref.descriptor.n_omega);
    resolution = ref.sinogram.resolution;
    tau_step_px = ref.sinogram.tau_step_px;
  }
  const std::uint64_t count = db.size();

  auto put = [&](const void* src, std::size_t bytes) {
    out.write(static_cast<const char*>(src), static_cast<std::streamsize>(bytes));
  };
  put(kMagic, sizeof kMagic);
  put(&n_theta, 4);
  put(&n_tau, 4);
  put(&n_omega, 4);
  put(&count, 8);
  put(&resolution, 8);
  put(&tau_step_px, 8);

  std::vector<float> f32;
  for (const MapEntry& e : db.entries()) {
    put(&e.id, 8);
    put(&e.pose.x, 8);
    put(&e.pose.y, 8);
    put(&e.pose.yaw, 8);
    const std::uint32_t label_len = static_cast<std::uint32_t>(e.label.size());
    put(&label_len, 4);
    put(e.label.data(), label_len);
    f32.assign(e.descriptor.data.begin(), e.descriptor.data.end());
    put(f32.data(), f32.size() * 4);
    f32.assign(e.sinogram.data.begin(), e.sinogram.data.end());
    put(f32.data(), f32.size() * 4);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

PlaceDatabase load_database(const std::filesystem::path& path) {
  Reader r{std::ifstream(path, std::ios::binary), path};
  if (!r.in) throw IoError("cannot open " + path.string());

  char magic[8];
  r.read(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw FormatError("bad magic (not a RINGDB1 file): " + path.string());

  const auto n_theta = r.scalar<std::uint32_t>();
  const auto n_tau = r.scalar<std::uint32_t>();
  const auto n_omega = r.scalar<std::uint32_t>();
  const auto count = r.scalar<std::uint64_t>();
  const auto resolution = r.scalar<double>();
  const auto tau_step_px = r.scalar<double>();
  if (count > 0 && (n_theta < 2 || n_tau < 2 || n_omega != n_tau / 2 + 1))
    throw FormatError("inconsistent header dimensions: " + path.string());

  PlaceDatabase db;
  std::vector<float> f32;
  for (std::uint64_t e = 0; e < count; ++e) {
    MapEntry entry;
    entry.id = r.scalar<std::uint64_t>();
    entry.pose.x = r.scalar<double>();
    entry.pose.y = r.scalar<double>();
    entry.pose.yaw = r.scalar<double>();
    const auto label_len = r.scalar<std::uint32_t>();
    entry.label.resize(label_len);
    if (label_len) r.read(entry.label.data(), label_len);

    entry.descriptor.n_theta = static_cast<int>(n_theta);
    entry.descriptor.n_omega = static_cast<int>(n_omega);
    f32.resize(static_cast<std::size_t>(n_theta) * n_omega);
    r.read(f32.data(), f32.size() * 4);
    entry.descriptor.data.assign(f32.begin(), f32.end());
    refresh_norm(entry.descriptor);

    entry.sinogram.n_theta = static_cast<int>(n_theta);
    entry.sinogram.n_tau = static_cast<int>(n_tau);
    entry.sinogram.resolution = resolution;
    entry.sinogram.tau_step_px = tau_step_px;
    f32.resize(static_cast<std::size_t>(n_theta) * n_tau);
    r.read(f32.data(), f32.size() * 4);
    entry.sinogram.data.assign(f32.begin(), f32.end());

    db.insert(std::move(entry));
  }
  // a well-formed file ends exactly at the last entry
  char extra;
  if (r.in.read(&extra, 1))
    throw FormatError("trailing bytes after last entry: " + path.string());
  return db;
}

}  // namespace ringloc
