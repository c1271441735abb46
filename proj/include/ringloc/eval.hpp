#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/place_db.hpp"
#include "ringloc/pose_solver.hpp"
#include "ringloc/scan_ingest.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

/// Greedy arc-length subsampling: keeps the first pose, then every pose at
/// least `interval` meters of accumulated path length after the last kept
/// one. Returns kept indices.
std::vector<std::size_t> subsample_trajectory(const std::vector<Se2Pose>& poses,
                                              double interval);

enum class DescriptorMode {
  TiRing,        // translation-invariant spectra
  RawSinogram,   // rotation search directly on sinogram rows
};

struct EvalQuery {
  std::uint64_t id = 0;
  BevGrid grid;
  Se2Pose ground_truth;
};

struct EvalParams {
  double revisit_threshold = 25.0;  // meters; a retrieval is a true place
                                    // match when the entry pose lies within
                                    // this distance of the query ground truth
  DescriptorMode mode = DescriptorMode::TiRing;
};

struct QueryRecord {
  std::uint64_t query_id = 0;
  std::uint64_t retrieved_id = 0;
  double score = 0.0;
  bool place_correct = false;
  bool degenerate = false;       // metric solve fell back to the entry pose
  Se2Pose estimated;             // global estimate
  Se2Pose ground_truth;
  double yaw_error_deg = 0.0;
  double trans_error_m = 0.0;
};

struct EvalRun {
  std::vector<QueryRecord> records;
  double revisit_threshold = 0.0;
};

/// Runs retrieval + metric localization for every query against the database.
/// Queries are independent; `exec` parallelizes across them.
EvalRun run_eval(const PlaceDatabase& db, const std::vector<EvalQuery>& queries,
                 const RingConfig& cfg, const EvalParams& params,
                 Exec exec = Exec::Parallel);

/// Fraction of queries whose top-1 entry is a true place match.
double recall_at_1(const EvalRun& run);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct F1Point {
  double threshold = 0.0;
  double f1 = 0.0;
  double recall = 0.0;
};

struct PrCurves {
  std::vector<PrPoint> pr_curve;    // one point per distinct score threshold,
                                    // thresholds descending (recall ascending)
  std::vector<F1Point> f1_curve;
  double auc = 0.0;                 // trapezoidal area under precision(recall)
  double accuracy_at_full_recall = 0.0;  // precision once every true match is
                                         // accepted (all queries ranked by score)
};

/// Precision/recall over score thresholds: a query is accepted when its top-1
/// score passes the threshold; accepted-and-correct counts as TP, accepted-
/// and-wrong as FP, rejected-but-correct as FN.
PrCurves pr_f1_auc(const EvalRun& run);

struct SuccessRates {
  double tsr = 0.0;  // translation within tolerance
  double osr = 0.0;  // orientation within tolerance
  double lsr = 0.0;  // both
};

/// Success rates over all queries: each estimate is compared against ground
/// truth as-is, wrong-place retrievals and degenerate fallbacks included.
SuccessRates success_rates(const EvalRun& run, double yaw_tol_deg = 3.0,
                           double trans_tol_m = 3.0);

struct MetricsReport {
  std::size_t n_queries = 0;
  std::size_t n_place_correct = 0;
  double recall_at_1 = 0.0;
  PrCurves curves;
  SuccessRates rates;
  // pose errors restricted to place-correct, non-degenerate queries
  std::vector<std::pair<std::uint64_t, double>> yaw_errors_deg;
  std::vector<std::pair<std::uint64_t, double>> trans_errors_m;
};

MetricsReport compute_metrics(const EvalRun& run, double yaw_tol_deg = 3.0,
                              double trans_tol_m = 3.0);

/// Writes pr_curve.csv, f1_curve.csv, yaw_errors.csv, trans_errors.csv and
/// summary.csv into `dir` (created if missing). Numeric cells carry enough
/// digits to round-trip at 6 significant figures.
void emit_report(const MetricsReport& report, const std::filesystem::path& dir);

struct ExternalScore {
  std::uint64_t query_id = 0;
  std::uint64_t map_id = 0;
  double score = 0.0;
};

/// CSV rows "query_id,map_id,score" with that exact header. Used to run the
/// metrics over scores produced outside this pipeline.
std::vector<ExternalScore> load_external_scores(const std::filesystem::path& path);

/// Builds an EvalRun from externally supplied scores: per query the best map
/// id wins; correctness comes from the pose tables. Pose errors are not
/// available, so every record carries the entry pose as its estimate and the
/// run only supports retrieval metrics.
EvalRun eval_external_scores(const std::vector<ExternalScore>& scores,
                             const std::vector<PoseRecord>& map_poses,
                             const std::vector<PoseRecord>& query_poses,
                             double revisit_threshold);

}  // namespace ringloc
