#include "ringloc/radon.hpp"

#include <cmath>

namespace ringloc {
namespace {

// Fast-path sampling density: kUSubsteps quadrature points across each tau
// bin, kVStep pixels between samples along the line. Calibrated against
// radon_oracle; see tests.
constexpr int kUSubsteps = 1;
constexpr double kVStep = 0.5;

void check_dims(const Image& img, int n_theta, int n_tau) {
  if (img.rows != img.cols || img.rows < 2)
    throw DimensionError("radon: image must be square, side >= 2");
  if (n_theta < 4 || n_theta % 2 != 0)
    throw DimensionError("radon: n_theta must be even and >= 4");
  if (n_tau < 2) throw DimensionError("radon: n_tau must be >= 2");
}

Sinogram make_sinogram(const Image& img, int n_theta, int n_tau,
                       double resolution) {
  Sinogram s;
  s.n_theta = n_theta;
  s.n_tau = n_tau;
  s.resolution = resolution;
  s.tau_step_px = std::sqrt(2.0) * img.cols / n_tau;
  s.data.assign(static_cast<std::size_t>(n_theta) * n_tau, 0.0);
  return s;
}

// Integral of the interpolant over one tau strip: u runs across the strip
// (line offset), v along the line. The (x, y) walk is incremental; the
// bilinear lookup rejects out-of-support samples cheaply.
double integrate_strip(const Image& img, double cos_t, double sin_t, double cx,
                       double u0, double du, int nu, double v0, double dv,
                       int nv) {
  double acc = 0.0;
  const double step_x = -sin_t * dv;
  const double step_y = cos_t * dv;
  for (int su = 0; su < nu; ++su) {
    const double u = u0 + (su + 0.5) * du;
    double x = cx + u * cos_t + (v0 + 0.5 * dv) * -sin_t;
    double y = cx + u * sin_t + (v0 + 0.5 * dv) * cos_t;
    for (int k = 0; k < nv; ++k, x += step_x, y += step_y)
      acc += bilinear_at(img, x, y);
  }
  return acc;
}

template <typename RowFn>
void for_each_row(int n_theta, Exec exec, RowFn&& row) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_theta; ++i) row(i);
  } else {
    for (int i = 0; i < n_theta; ++i) row(i);
  }
}

}  // namespace

Sinogram radon(const Image& img, int n_theta, int n_tau, double resolution,
               Exec exec) {
  check_dims(img, n_theta, n_tau);
  Sinogram out = make_sinogram(img, n_theta, n_tau, resolution);
  const int side = img.cols;
  const double diag = std::sqrt(2.0) * side;
  const double dtau = diag / n_tau;
  const double cx = 0.5 * (side - 1);
  const double du = dtau / kUSubsteps;
  // v covers the diagonal with a pixel of slack on both ends
  const int nv = static_cast<int>(std::ceil((diag + 2.0) / kVStep));
  const double v0 = -0.5 * nv * kVStep;
  const double weight = du * kVStep;

  for_each_row(n_theta, exec, [&](int i) {
    const double theta = 2.0 * kPi * i / n_theta;
    const double c = std::cos(theta), s = std::sin(theta);
    double* row = &out.data[static_cast<std::size_t>(i) * n_tau];
    for (int j = 0; j < n_tau; ++j) {
      const double strip_lo = -0.5 * diag + j * dtau - 0.5 * dtau;
      row[j] = integrate_strip(img, c, s, cx, strip_lo, du, kUSubsteps, v0,
                               kVStep, nv) *
               weight;
    }
  });
  return out;
}

Sinogram radon(const BevGrid& grid, int n_theta, int n_tau, Exec exec) {
  return radon(to_image(grid), n_theta, n_tau, grid.resolution, exec);
}

Sinogram radon_oracle(const Image& img, int n_theta, int n_tau,
                      double resolution, int samples_per_line) {
  check_dims(img, n_theta, n_tau);
  if (samples_per_line < 2 * img.cols)
    throw DimensionError("radon_oracle: samples_per_line must be >= 2*side");
  Sinogram out = make_sinogram(img, n_theta, n_tau, resolution);
  const int side = img.cols;
  const double diag = std::sqrt(2.0) * side;
  const double dtau = diag / n_tau;
  const double cx = 0.5 * (side - 1);
  const double dv = diag / samples_per_line;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = 2.0 * kPi * i / n_theta;
    const double c = std::cos(theta), s = std::sin(theta);
    for (int j = 0; j < n_tau; ++j) {
      const double tau = -0.5 * diag + j * dtau;
      double acc = 0.0;
      for (int k = 0; k < samples_per_line; ++k) {
        const double v = -0.5 * diag + (k + 0.5) * dv;
        acc += bilinear_at(img, cx + tau * c - v * s, cx + tau * s + v * c);
      }
      // dtau * line integral, same cell scaling as the fast path
      out.at(i, j) = acc * dv * dtau;
    }
  }
  return out;
}

Sinogram radon_oracle(const BevGrid& grid, int n_theta, int n_tau,
                      int samples_per_line) {
  return radon_oracle(to_image(grid), n_theta, n_tau, grid.resolution,
                      samples_per_line);
}

Sinogram circular_row_shift(const Sinogram& s, int rows) {
  Sinogram out = s;
  const int n = s.n_theta;
  if (n == 0) return out;
  int r = rows % n;
  if (r < 0) r += n;
  if (r == 0) return out;
  for (int i = 0; i < n; ++i) {
    const int src = (i - r + n) % n;
    for (int j = 0; j < s.n_tau; ++j) out.at(i, j) = s.at(src, j);
  }
  return out;
}

}  // namespace ringloc
