#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/descriptor.hpp"

namespace ringloc {

struct MapEntry {
  std::uint64_t id = 0;
  Se2Pose pose;           // global pose of the scan
  TiRing descriptor;
  Sinogram sinogram;      // kept for metric pose recovery at query time
  std::string label;      // free-form source tag, may be empty
};

/// In-memory place database. All entries share one descriptor/sinogram shape
/// and one metric scale; ids are unique.
class PlaceDatabase {
 public:
  void insert(MapEntry entry);
  bool contains(std::uint64_t id) const { return index_.count(id) != 0; }
  const MapEntry& entry(std::uint64_t id) const;
  const std::vector<MapEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<MapEntry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct RankedMatch {
  std::uint64_t entry_id = 0;
  SimilarityResult result;
};

/// Top-k entries by similarity score, best first. Ordering is total and
/// deterministic: score descending, then entry id ascending. k is clamped to
/// the database size; querying an empty database is an error.
std::vector<RankedMatch> query_topk(const PlaceDatabase& db, const TiRing& query,
                                    int k, bool normalize = true,
                                    Exec exec = Exec::Parallel);

/// Binary round-trip. Descriptors and sinograms are stored as f32; scores
/// recomputed after a load match the originals to ~1e-7 relative.
void save_database(const PlaceDatabase& db, const std::filesystem::path& path);
PlaceDatabase load_database(const std::filesystem::path& path);

}  // namespace ringloc
