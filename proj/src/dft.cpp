#include "ringloc/dft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ringloc::dft {
namespace {

// FFTW's planner is not thread-safe; execution of existing plans is. Plans
// and their aligned buffers are cached per thread and per length.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanSet {
  int n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit PlanSet(int n_) : n(n_) {
    real = fftw_alloc_real(static_cast<std::size_t>(n));
    cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      if (fwd) fftw_destroy_plan(fwd);
      if (bwd) fftw_destroy_plan(bwd);
    }
    fftw_free(real);
    fftw_free(cplx);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<PlanSet>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanSet>(n);
  return *slot;
}

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("dft: length must be >= 2");
}

}  // namespace

void forward(const double* in, int n, std::complex<double>* out) {
  check_n(n);
  PlanSet& ws = plans_for(n);
  std::memcpy(ws.real, in, sizeof(double) * n);
  fftw_execute(ws.fwd);
  const int bins = n / 2 + 1;
  for (int k = 0; k < bins; ++k)
    out[k] = std::complex<double>(ws.cplx[k][0], ws.cplx[k][1]);
}

std::vector<double> magnitudes(const double* in, int n) {
  check_n(n);
  PlanSet& ws = plans_for(n);
  std::memcpy(ws.real, in, sizeof(double) * n);
  fftw_execute(ws.fwd);
  const int bins = n / 2 + 1;
  std::vector<double> mag(bins);
  for (int k = 0; k < bins; ++k)
    mag[k] = std::hypot(ws.cplx[k][0], ws.cplx[k][1]);
  return mag;
}

std::vector<double> shift_correlation(const double* a, const double* b, int n) {
  check_n(n);
  PlanSet& ws = plans_for(n);
  const int bins = n / 2 + 1;
  std::vector<std::complex<double>> spec_a(bins);
  forward(a, n, spec_a.data());
  std::memcpy(ws.real, b, sizeof(double) * n);
  fftw_execute(ws.fwd);
  for (int k = 0; k < bins; ++k) {
    // conj(B) * A
    const std::complex<double> bk(ws.cplx[k][0], -ws.cplx[k][1]);
    const std::complex<double> p = bk * spec_a[k];
    ws.cplx[k][0] = p.real();
    ws.cplx[k][1] = p.imag();
  }
  fftw_execute(ws.bwd);
  std::vector<double> out(n);
  const double scale = 1.0 / n;
  for (int k = 0; k < n; ++k) out[k] = ws.real[k] * scale;
  return out;
}

std::vector<double> row_shift_correlation(const double* a, const double* b,
                                          int rows, int cols) {
  check_n(rows);
  if (cols < 1) throw std::invalid_argument("dft: cols must be >= 1");
  PlanSet& ws = plans_for(rows);
  const int bins = rows / 2 + 1;
  std::vector<std::complex<double>> acc(bins, {0.0, 0.0});
  std::vector<std::complex<double>> spec_a(bins);
  std::vector<double> col_a(rows), col_b(rows);
  for (int w = 0; w < cols; ++w) {
    for (int i = 0; i < rows; ++i) {
      col_a[i] = a[static_cast<std::size_t>(i) * cols + w];
      col_b[i] = b[static_cast<std::size_t>(i) * cols + w];
    }
    forward(col_a.data(), rows, spec_a.data());
    std::memcpy(ws.real, col_b.data(), sizeof(double) * rows);
    fftw_execute(ws.fwd);
    for (int k = 0; k < bins; ++k) {
      const std::complex<double> bk(ws.cplx[k][0], -ws.cplx[k][1]);
      acc[k] += bk * spec_a[k];
    }
  }
  for (int k = 0; k < bins; ++k) {
    ws.cplx[k][0] = acc[k].real();
    ws.cplx[k][1] = acc[k].imag();
  }
  fftw_execute(ws.bwd);
  std::vector<double> out(rows);
  const double scale = 1.0 / rows;
  for (int k = 0; k < rows; ++k) out[k] = ws.real[k] * scale;
  return out;
}

}  // namespace ringloc::dft
