#include "ringloc/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "ringloc/radon.hpp"

namespace ringloc {
namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  out.append(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

double planar_dist(const Se2Pose& a, const Se2Pose& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

QueryRecord finish_record(const EvalQuery& q, const MapEntry& entry,
                          const LocalizeResult& loc, double revisit) {
  QueryRecord rec;
  rec.query_id = q.id;
  rec.retrieved_id = loc.entry_id;
  rec.score = loc.similarity.score;
  rec.degenerate = loc.degenerate;
  rec.estimated = loc.global_pose;
  rec.ground_truth = q.ground_truth;
  rec.place_correct = planar_dist(entry.pose, q.ground_truth) <= revisit;
  rec.yaw_error_deg =
      std::abs(rad2deg(wrap_angle(loc.global_pose.yaw - q.ground_truth.yaw)));
  rec.trans_error_m = planar_dist(loc.global_pose, q.ground_truth);
  return rec;
}

}  // namespace

std::vector<std::size_t> subsample_trajectory(const std::vector<Se2Pose>& poses,
                                              double interval) {
  if (!(interval >= 0.0))
    throw DimensionError("subsample_trajectory: interval must be >= 0");
  std::vector<std::size_t> kept;
  if (poses.empty()) return kept;
  kept.push_back(0);
  double acc = 0.0;
  for (std::size_t i = 1; i < poses.size(); ++i) {
    acc += planar_dist(poses[i - 1], poses[i]);
    if (acc >= interval) {
      kept.push_back(i);
      acc = 0.0;
    }
  }
  return kept;
}

EvalRun run_eval(const PlaceDatabase& db, const std::vector<EvalQuery>& queries,
                 const RingConfig& cfg, const EvalParams& params, Exec exec) {
  if (db.empty()) throw DimensionError("run_eval: empty database");
  const Sinogram& ref = db.entries().front().sinogram;

  EvalRun run;
  run.revisit_threshold = params.revisit_threshold;
  run.records.resize(queries.size());

  auto eval_one = [&](int qi) {
    const EvalQuery& q = queries[qi];
    const Sinogram sino =
        radon(q.grid, ref.n_theta, ref.n_tau, Exec::Serial);

    std::uint64_t best_id = 0;
    SimilarityResult best;
    if (params.mode == DescriptorMode::TiRing) {
      const TiRing desc = ti_ring(sino);
      const auto top = query_topk(db, desc, 1, cfg.normalize, Exec::Serial);
      best_id = top.front().entry_id;
      best = top.front().result;
    } else {
      bool first = true;
      for (const MapEntry& e : db.entries()) {
        SimilarityResult r =
            correlate_rows(sino.data.data(), e.sinogram.data.data(),
                           sino.n_theta, sino.n_tau, cfg.normalize);
        if (first || r.score > best.score ||
            (r.score == best.score && e.id < best_id)) {
          best = std::move(r);
          best_id = e.id;
          first = false;
        }
      }
    }
    const MapEntry& entry = db.entry(best_id);
    const LocalizeResult loc = finish_localize(sino, entry, best, cfg);
    run.records[qi] = finish_record(q, entry, loc, params.revisit_threshold);
  };

  const int n = static_cast<int>(queries.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) eval_one(i);
  } else {
    for (int i = 0; i < n; ++i) eval_one(i);
  }
  return run;
}

double recall_at_1(const EvalRun& run) {
  if (run.records.empty()) return 0.0;
  std::size_t correct = 0;
  for (const QueryRecord& r : run.records) correct += r.place_correct;
  return static_cast<double>(correct) / run.records.size();
}

PrCurves pr_f1_auc(const EvalRun& run) {
  PrCurves out;
  std::vector<const QueryRecord*> sorted;
  sorted.reserve(run.records.size());
  for (const QueryRecord& r : run.records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const QueryRecord* a, const QueryRecord* b) {
              if (a->score != b->score) return a->score > b->score;
              return a->query_id < b->query_id;
            });

  std::size_t total_correct = 0;
  for (const QueryRecord& r : run.records) total_correct += r.place_correct;
  if (sorted.empty()) return out;

  std::size_t tp = 0;
  std::size_t accepted = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    tp += sorted[k]->place_correct;
    ++accepted;
    // emit one point per distinct threshold, after absorbing ties
    if (k + 1 < sorted.size() && sorted[k + 1]->score == sorted[k]->score)
      continue;
    PrPoint p;
    p.threshold = sorted[k]->score;
    p.precision = static_cast<double>(tp) / accepted;
    // with zero true matches recall is 0/0; report 0 so an all-wrong run
    // still yields one zero-precision point per threshold
    p.recall = total_correct ? static_cast<double>(tp) / total_correct : 0.0;
    out.pr_curve.push_back(p);
    F1Point f;
    f.threshold = p.threshold;
    f.recall = p.recall;
    f.f1 = (p.precision + p.recall) > 0.0
               ? 2.0 * p.precision * p.recall / (p.precision + p.recall)
               : 0.0;
    out.f1_curve.push_back(f);
  }

  // trapezoid over recall, flat extension down to recall 0
  double prev_r = 0.0;
  double prev_p = out.pr_curve.front().precision;
  double auc = 0.0;
  for (const PrPoint& p : out.pr_curve) {
    auc += (p.recall - prev_r) * 0.5 * (p.precision + prev_p);
    prev_r = p.recall;
    prev_p = p.precision;
  }
  out.auc = auc;
  out.accuracy_at_full_recall = out.pr_curve.back().precision;
  return out;
}

SuccessRates success_rates(const EvalRun& run, double yaw_tol_deg,
                           double trans_tol_m) {
  SuccessRates rates;
  if (run.records.empty()) return rates;
  std::size_t t = 0, o = 0, l = 0;
  for (const QueryRecord& r : run.records) {
    const bool tok = r.trans_error_m <= trans_tol_m;
    const bool ook = r.yaw_error_deg <= yaw_tol_deg;
    t += tok;
    o += ook;
    l += tok && ook;
  }
  const double n = static_cast<double>(run.records.size());
  rates.tsr = t / n;
  rates.osr = o / n;
  rates.lsr = l / n;
  return rates;
}

MetricsReport compute_metrics(const EvalRun& run, double yaw_tol_deg,
                              double trans_tol_m) {
  MetricsReport rep;
  rep.n_queries = run.records.size();
  for (const QueryRecord& r : run.records) {
    rep.n_place_correct += r.place_correct;
    if (r.place_correct && !r.degenerate) {
      rep.yaw_errors_deg.emplace_back(r.query_id, r.yaw_error_deg);
      rep.trans_errors_m.emplace_back(r.query_id, r.trans_error_m);
    }
  }
  rep.recall_at_1 = recall_at_1(run);
  rep.curves = pr_f1_auc(run);
  rep.rates = success_rates(run, yaw_tol_deg, trans_tol_m);
  return rep;
}

void emit_report(const MetricsReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  std::string pr = "threshold,precision,recall\n";
  for (const PrPoint& p : report.curves.pr_curve) {
    append_number(pr, p.threshold);
    pr += ',';
    append_number(pr, p.precision);
    pr += ',';
    append_number(pr, p.recall);
    pr += '\n';
  }
  write_file(dir / "pr_curve.csv", pr);

  std::string f1 = "threshold,f1,recall\n";
  for (const F1Point& p : report.curves.f1_curve) {
    append_number(f1, p.threshold);
    f1 += ',';
    append_number(f1, p.f1);
    f1 += ',';
    append_number(f1, p.recall);
    f1 += '\n';
  }
  write_file(dir / "f1_curve.csv", f1);

  std::string yawcsv = "query_id,yaw_error_deg\n";
  for (const auto& [id, err] : report.yaw_errors_deg) {
    yawcsv += std::to_string(id);
    yawcsv += ',';
    append_number(yawcsv, err);
    yawcsv += '\n';
  }
  write_file(dir / "yaw_errors.csv", yawcsv);

  std::string transcsv = "query_id,trans_error_m\n";
  for (const auto& [id, err] : report.trans_errors_m) {
    transcsv += std::to_string(id);
    transcsv += ',';
    append_number(transcsv, err);
    transcsv += '\n';
  }
  write_file(dir / "trans_errors.csv", transcsv);

  double yaw_sum = 0.0, trans_sum = 0.0;
  for (const auto& [id, err] : report.yaw_errors_deg) yaw_sum += err;
  for (const auto& [id, err] : report.trans_errors_m) trans_sum += err;
  const std::size_t n_err = report.yaw_errors_deg.size();

  std::string summary = "metric,value\n";
  auto row = [&](const char* name, double value) {
    summary += name;
    summary += ',';
    append_number(summary, value);
    summary += '\n';
  };
  row("n_queries", static_cast<double>(report.n_queries));
  row("n_place_correct", static_cast<double>(report.n_place_correct));
  row("recall_at_1", report.recall_at_1);
  row("auc", report.curves.auc);
  row("accuracy_at_full_recall", report.curves.accuracy_at_full_recall);
  row("tsr", report.rates.tsr);
  row("osr", report.rates.osr);
  row("lsr", report.rates.lsr);
  row("n_pose_evaluated", static_cast<double>(n_err));
  row("mean_yaw_error_deg", n_err ? yaw_sum / n_err : 0.0);
  row("mean_trans_error_m", n_err ? trans_sum / n_err : 0.0);
  write_file(dir / "summary.csv", summary);
}

std::vector<ExternalScore> load_external_scores(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "query_id,map_id,score")
    throw FormatError(
        "score csv must start with header 'query_id,map_id,score': " +
        path.string());
  std::vector<ExternalScore> out;
  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ExternalScore rec;
    const char* p = line.data();
    const char* end = p + line.size();
    auto field = [&](auto& value) {
      const auto r = std::from_chars(p, end, value);
      if (r.ec != std::errc())
        throw ParseError("bad score row at line " + std::to_string(line_no) +
                             " of " + path.string(),
                         line_no);
      p = r.ptr;
    };
    auto comma = [&] {
      if (p >= end || *p != ',')
        throw ParseError("bad score row at line " + std::to_string(line_no) +
                             " of " + path.string(),
                         line_no);
      ++p;
    };
    field(rec.query_id);
    comma();
    field(rec.map_id);
    comma();
    field(rec.score);
    if (p != end)
      throw ParseError("trailing characters at line " + std::to_string(line_no) +
                           " of " + path.string(),
                       line_no);
    out.push_back(rec);
  }
  return out;
}

EvalRun eval_external_scores(const std::vector<ExternalScore>& scores,
                             const std::vector<PoseRecord>& map_poses,
                             const std::vector<PoseRecord>& query_poses,
                             double revisit_threshold) {
  std::map<std::uint64_t, Se2Pose> map_by_id, query_by_id;
  for (const PoseRecord& r : map_poses) map_by_id[r.id] = r.pose;
  for (const PoseRecord& r : query_poses) query_by_id[r.id] = r.pose;

  // best map id per query: score descending, map id ascending on ties
  std::map<std::uint64_t, ExternalScore> best;
  for (const ExternalScore& s : scores) {
    if (!map_by_id.count(s.map_id))
      throw DimensionError("external scores reference unknown map id " +
                           std::to_string(s.map_id));
    if (!query_by_id.count(s.query_id))
      throw DimensionError("external scores reference unknown query id " +
                           std::to_string(s.query_id));
    const auto it = best.find(s.query_id);
    if (it == best.end() || s.score > it->second.score ||
        (s.score == it->second.score && s.map_id < it->second.map_id))
      best[s.query_id] = s;
  }

  EvalRun run;
  run.revisit_threshold = revisit_threshold;
  for (const auto& [qid, s] : best) {
    const Se2Pose& gt = query_by_id.at(qid);
    const Se2Pose& entry = map_by_id.at(s.map_id);
    QueryRecord rec;
    rec.query_id = qid;
    rec.retrieved_id = s.map_id;
    rec.score = s.score;
    rec.place_correct =
        std::hypot(entry.x - gt.x, entry.y - gt.y) <= revisit_threshold;
    rec.degenerate = true;  // no metric solve behind external scores
    rec.estimated = entry;
    rec.ground_truth = gt;
    rec.yaw_error_deg = std::abs(rad2deg(wrap_angle(entry.yaw - gt.yaw)));
    rec.trans_error_m = std::hypot(entry.x - gt.x, entry.y - gt.y);
    run.records.push_back(rec);
  }
  return run;
}

}  // namespace ringloc
