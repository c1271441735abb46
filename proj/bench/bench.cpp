// Compares the OpenMP kernels against their serial reference paths and checks
// that both produce bitwise-identical output. Wall times are medians over
// --reps runs; speedups depend on the machine's core count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringloc/descriptor.hpp"
#include "ringloc/place_db.hpp"
#include "ringloc/radon.hpp"
#include "ringloc/synth.hpp"
#include "ringloc/types.hpp"

using namespace ringloc;
using Clock = std::chrono::steady_clock;

namespace {

double median_ms(const std::function<void()>& fn, int reps) {
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "outputs identical" : "OUTPUTS DIFFER");
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringloc serial vs parallel kernel benchmark"};
  int reps = 5;
  int grid = 120;
  app.add_option("--reps", reps, "repetitions per measurement")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  app.add_option("--grid", grid, "BEV grid size")
      ->check(CLI::Range(16, 1024))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  RingConfig cfg;
  cfg.grid_size = grid;
  const SyntheticWorld world = generate_world(7);
  const Se2Pose pose = make_pose(20.0, -35.0, 0.6);
  bool all_identical = true;

  // render_scan
  {
    BevGrid gs = render_scan(world, pose, cfg.bev(), Exec::Serial);
    BevGrid gp = render_scan(world, pose, cfg.bev(), Exec::Parallel);
    const bool ok = gs.occupancy == gp.occupancy;
    all_identical = all_identical && ok;
    const double ts = median_ms([&] { gs = render_scan(world, pose, cfg.bev(), Exec::Serial); }, reps);
    const double tp = median_ms([&] { gp = render_scan(world, pose, cfg.bev(), Exec::Parallel); }, reps);
    report("render_scan", ts, tp, ok);
  }

  // radon
  const BevGrid scan = render_scan(world, pose, cfg.bev());
  {
    Sinogram ss = radon(scan, cfg.n_theta, cfg.n_tau, Exec::Serial);
    Sinogram sp = radon(scan, cfg.n_theta, cfg.n_tau, Exec::Parallel);
    const bool ok = same_bits(ss.data, sp.data);
    all_identical = all_identical && ok;
    const double ts = median_ms([&] { ss = radon(scan, cfg.n_theta, cfg.n_tau, Exec::Serial); }, reps);
    const double tp = median_ms([&] { sp = radon(scan, cfg.n_theta, cfg.n_tau, Exec::Parallel); }, reps);
    report("radon", ts, tp, ok);
  }

  // query_topk over a synthetic database
  {
    PlaceDatabase db;
    SplitMix64 rng(99);
    for (int i = 0; i < 200; ++i) {
      const Se2Pose p = make_pose(rng.uniform(-150, 150), rng.uniform(-150, 150),
                                  rng.uniform(-kPi, kPi));
      MapEntry e;
      e.id = i;
      e.pose = p;
      e.sinogram = radon(render_scan(world, p, cfg.bev()), cfg.n_theta, cfg.n_tau);
      e.descriptor = ti_ring(e.sinogram);
      db.insert(std::move(e));
    }
    const TiRing query = ti_ring(radon(scan, cfg.n_theta, cfg.n_tau));
    auto rs = query_topk(db, query, 5, true, Exec::Serial);
    auto rp = query_topk(db, query, 5, true, Exec::Parallel);
    bool ok = rs.size() == rp.size();
    for (std::size_t i = 0; ok && i < rs.size(); ++i)
      ok = rs[i].entry_id == rp[i].entry_id &&
           rs[i].result.score == rp[i].result.score;
    all_identical = all_identical && ok;
    const double ts = median_ms([&] { rs = query_topk(db, query, 5, true, Exec::Serial); }, reps);
    const double tp = median_ms([&] { rp = query_topk(db, query, 5, true, Exec::Parallel); }, reps);
    report("query_topk (200)", ts, tp, ok);
  }

  return all_identical ? 0 : 1;
}
