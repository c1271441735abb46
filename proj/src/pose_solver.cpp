#include "ringloc/pose_solver.hpp"

#include <cmath>

#include "ringloc/dft.hpp"
#include "ringloc/scan_ingest.hpp"

namespace ringloc {
namespace {

// Rows whose normalized correlation peak falls below this carry no usable
// shift information (flat or mismatched content).
constexpr double kRowPeakThreshold = 0.1;
constexpr double kMaxCondition = 1e8;

double row_norm(const double* row, int n) {
  double sq = 0.0;
  for (int j = 0; j < n; ++j) sq += row[j] * row[j];
  return std::sqrt(sq);
}

// signed shift in [-n/2, n/2) for a circular index
int signed_shift(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

}  // namespace

OrientationEstimate estimate_orientation(const TiRing& query, const TiRing& map,
                                         bool normalize) {
  const SimilarityResult sim = similarity(query, map, normalize);
  OrientationEstimate est;
  est.shift_bins = sim.best_shift;
  est.alpha = wrap_angle(sim.best_shift * 2.0 * kPi / query.n_theta);
  est.score = sim.score;
  return est;
}

std::vector<RowShift> estimate_row_shifts(const Sinogram& query,
                                          const Sinogram& map_aligned) {
  if (query.n_theta != map_aligned.n_theta || query.n_tau != map_aligned.n_tau)
    throw DimensionError("estimate_row_shifts: sinogram shapes differ");
  if (std::abs(query.tau_step_m() - map_aligned.tau_step_m()) >
      1e-9 * std::max(query.tau_step_m(), map_aligned.tau_step_m()))
    throw DimensionError("estimate_row_shifts: metric scales differ");

  const int n = query.n_theta;
  const int nt = query.n_tau;
  const double col_to_m = query.tau_step_m();
  std::vector<RowShift> shifts(n);
  for (int i = 0; i < n; ++i) {
    const double* q = &query.data[static_cast<std::size_t>(i) * nt];
    const double* d = &map_aligned.data[static_cast<std::size_t>(i) * nt];
    const double nq = row_norm(q, nt);
    const double nd = row_norm(d, nt);
    if (nq <= 0.0 || nd <= 0.0) continue;  // stays invalid, peak stays 0

    // profile[k]: map row content moved forward by k columns vs the query row
    const std::vector<double> prof = dft::shift_correlation(q, d, nt);
    int best = 0;
    for (int k = 1; k < nt; ++k) {
      if (prof[k] > prof[best] ||
          (prof[k] == prof[best] &&
           std::abs(signed_shift(k, nt)) < std::abs(signed_shift(best, nt))))
        best = k;
    }
    const double peak = prof[best] / (nq * nd);
    // below-threshold rows are excluded from the solve but keep their
    // measured peak, which the alignment disambiguation sums over
    shifts[i].peak = peak;
    if (peak < kRowPeakThreshold) continue;

    const double c0 = prof[best];
    const double cm = prof[(best - 1 + nt) % nt];
    const double cp = prof[(best + 1) % nt];
    const double denom = cm - 2.0 * c0 + cp;
    double frac = 0.0;
    if (denom < 0.0) frac = 0.5 * (cm - cp) / denom;
    if (frac > 0.5) frac = 0.5;
    if (frac < -0.5) frac = -0.5;

    shifts[i].delta_m = (signed_shift(best, nt) + frac) * col_to_m;
    shifts[i].valid = true;
  }
  return shifts;
}

TranslationEstimate solve_translation(const std::vector<RowShift>& shifts,
                                      double alpha, bool weighted) {
  const int n = static_cast<int>(shifts.size());
  if (n < 2) throw DegenerateGeometryError("solve_translation: too few rows");

  double saa = 0.0, sab = 0.0, sbb = 0.0, sat = 0.0, sbt = 0.0;
  int n_valid = 0;
  for (int i = 0; i < n; ++i) {
    if (!shifts[i].valid) continue;
    const double theta = 2.0 * kPi * i / n + alpha;
    const double a = std::cos(theta);
    const double b = std::sin(theta);
    const double w = weighted ? shifts[i].peak : 1.0;
    saa += w * a * a;
    sab += w * a * b;
    sbb += w * b * b;
    sat += w * a * shifts[i].delta_m;
    sbt += w * b * shifts[i].delta_m;
    ++n_valid;
  }
  if (n_valid < 2)
    throw DegenerateGeometryError("solve_translation: fewer than 2 valid rows");

  // eigenvalues of the symmetric normal matrix [[saa, sab], [sab, sbb]]
  const double tr = saa + sbb;
  const double det = saa * sbb - sab * sab;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lo = 0.5 * (tr - disc);
  const double hi = 0.5 * (tr + disc);
  if (lo <= 0.0 || hi / lo > kMaxCondition)
    throw DegenerateGeometryError(
        "solve_translation: constraint directions nearly collinear");

  TranslationEstimate est;
  est.dx = (sbb * sat - sab * sbt) / det;
  est.dy = (saa * sbt - sab * sat) / det;

  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!shifts[i].valid) continue;
    const double theta = 2.0 * kPi * i / n + alpha;
    const double r =
        std::cos(theta) * est.dx + std::sin(theta) * est.dy - shifts[i].delta_m;
    rss += r * r;
  }
  est.residual = std::sqrt(rss / n_valid);
  return est;
}

namespace {

double peak_sum(const std::vector<RowShift>& shifts) {
  double s = 0.0;
  for (const RowShift& r : shifts) s += r.peak;
  return s;
}

}  // namespace

LocalizeResult finish_localize(const Sinogram& query_sino, const MapEntry& entry,
                               const SimilarityResult& sim,
                               const RingConfig& cfg) {
  LocalizeResult res;
  res.entry_id = entry.id;
  res.similarity = sim;
  res.pose.score = sim.score;

  // The tau-axis magnitude spectrum is blind to row reflection, which makes
  // the descriptor correlation profile pi-periodic: shifts b and b + n/2 score
  // identically up to discretization crumbs. The raw sinogram rows are not
  // reflection-blind, so both alignments are tried and the one with stronger
  // summed per-row correlation wins.
  const int n = entry.sinogram.n_theta;
  const int b0 = sim.best_shift;
  const int b1 = (b0 + n / 2) % n;
  std::vector<RowShift> shifts0 = estimate_row_shifts(
      query_sino, circular_row_shift(entry.sinogram, b0));
  std::vector<RowShift> shifts1 = estimate_row_shifts(
      query_sino, circular_row_shift(entry.sinogram, b1));
  const bool flip = peak_sum(shifts1) > peak_sum(shifts0);
  const int b = flip ? b1 : b0;
  res.pose.row_shifts = flip ? std::move(shifts1) : std::move(shifts0);
  res.pose.alpha = wrap_angle(b * 2.0 * kPi / n);

  try {
    // Row shifts live in the rotation-aligned raster; the raster's y axis is
    // the mirror of metric y, hence the sign adapters around the solve.
    const TranslationEstimate t =
        solve_translation(res.pose.row_shifts, -res.pose.alpha, cfg.weighted_ls);
    res.pose.dx = -t.dx;
    res.pose.dy = t.dy;
    res.pose.residual = t.residual;
  } catch (const DegenerateGeometryError& e) {
    res.degenerate = true;
    res.message = e.what();
  }
  res.global_pose = compose(
      entry.pose, make_pose(res.pose.dx, res.pose.dy, res.pose.alpha));
  return res;
}

LocalizeResult localize(const BevGrid& query, const PlaceDatabase& db,
                        const RingConfig& cfg) {
  if (db.empty()) throw DimensionError("localize: empty database");
  const Sinogram& ref = db.entries().front().sinogram;
  if (std::abs(query.resolution * query.size -
               ref.resolution * ref.tau_step_px * ref.n_tau / std::sqrt(2.0)) >
      1e-6 * query.resolution * query.size)
    throw DimensionError("localize: query grid scale differs from database");

  const Sinogram sino = radon(query, ref.n_theta, ref.n_tau);
  const TiRing desc = ti_ring(sino);
  const std::vector<RankedMatch> top = query_topk(db, desc, 1, cfg.normalize);
  return finish_localize(sino, db.entry(top.front().entry_id),
                         top.front().result, cfg);
}

LocalizeResult localize(const PointCloud& query, const PlaceDatabase& db,
                        const RingConfig& cfg) {
  const PointCloud above = remove_ground(query, cfg.z_min);
  return localize(to_bev(above, cfg.bev()), db, cfg);
}

}  // namespace ringloc
