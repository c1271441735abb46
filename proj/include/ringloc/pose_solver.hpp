#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/descriptor.hpp"
#include "ringloc/place_db.hpp"
#include "ringloc/radon.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

struct OrientationEstimate {
  double alpha = 0.0;  // relative yaw of query w.r.t. map, [-pi, pi)
  double score = 0.0;
  int shift_bins = 0;  // row shift realizing alpha (alpha = shift * 2pi/n_theta)
};

/// Orientation from the descriptor correlation maximum. The returned shift
/// aligns the map descriptor to the query via circular_row_shift.
OrientationEstimate estimate_orientation(const TiRing& query, const TiRing& map,
                                         bool normalize = true);

struct RowShift {
  double delta_m = 0.0;  // tau displacement of the map row content, meters
  double peak = 0.0;     // normalized correlation peak, recorded even for
                         // rows excluded from the solve
  bool valid = false;    // false: zero-energy row or peak below threshold
};

/// Per-row circular correlation between the query sinogram and the
/// already-orientation-aligned map sinogram. Each row's peak is refined to
/// sub-column precision with a three-point parabolic fit. Rows whose
/// normalized peak falls below 0.1, or with no energy on either side, come
/// back invalid. Shifts are reported in the signed range [-span/2, span/2).
std::vector<RowShift> estimate_row_shifts(const Sinogram& query,
                                          const Sinogram& map_aligned);

struct TranslationEstimate {
  double dx = 0.0;
  double dy = 0.0;
  double residual = 0.0;  // RMS of the equation residuals over valid rows, meters
};

/// Least-squares solve of the over-determined system
///   cos(theta_i + alpha) * dx + sin(theta_i + alpha) * dy = delta_i
/// over valid rows, theta_i = 2*pi*i/n. Closed-form 2x2 normal equations.
/// With `weighted`, each equation is weighted by its correlation peak.
/// Throws DegenerateGeometryError when fewer than two rows are valid or the
/// normal matrix condition number exceeds 1e8.
TranslationEstimate solve_translation(const std::vector<RowShift>& shifts,
                                      double alpha, bool weighted = false);

struct PoseEstimate {
  double alpha = 0.0;       // relative yaw, query w.r.t. map
  double dx = 0.0;          // relative translation in the map scan's frame
  double dy = 0.0;
  double score = 0.0;       // place similarity of the retrieved entry
  double residual = 0.0;    // translation solve residual, meters
  std::vector<RowShift> row_shifts;
};

struct LocalizeResult {
  std::uint64_t entry_id = 0;
  SimilarityResult similarity;
  PoseEstimate pose;
  Se2Pose global_pose;
  bool degenerate = false;  // translation solve failed; pose falls back to
                            // the entry pose rotated by alpha
  std::string message;
};

/// Metric stage shared by localize and the evaluation harness: given the
/// retrieved entry and its similarity result, aligns the map sinogram,
/// estimates per-row shifts, solves for translation and composes the global
/// pose. Because the descriptor cannot tell a rotation from its antipode
/// (magnitude spectra are reflection-blind), both candidate alignments
/// best_shift and best_shift + n_theta/2 are scored against the raw sinogram
/// rows and the stronger one provides alpha. A degenerate solve falls back to
/// the entry pose rotated by alpha and sets the flag instead of throwing.
LocalizeResult finish_localize(const Sinogram& query_sino, const MapEntry& entry,
                               const SimilarityResult& sim,
                               const RingConfig& cfg);

/// Full pipeline against a database: descriptor retrieval (top-1), rotation
/// alignment, per-row shifts, translation solve, and composition with the
/// entry's global pose. The grid must match the database's metric scale.
LocalizeResult localize(const BevGrid& query, const PlaceDatabase& db,
                        const RingConfig& cfg);
LocalizeResult localize(const PointCloud& query, const PlaceDatabase& db,
                        const RingConfig& cfg);

}  // namespace ringloc
