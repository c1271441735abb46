#include "ringloc/descriptor.hpp"

#include <cmath>

#include "ringloc/dft.hpp"

namespace ringloc {

TiRing ti_ring(const Sinogram& s) {
  if (s.n_theta < 2 || s.n_tau < 2)
    throw DimensionError("ti_ring: empty sinogram");
  TiRing d;
  d.n_theta = s.n_theta;
  d.n_omega = s.n_tau / 2 + 1;
  d.data.assign(static_cast<std::size_t>(d.n_theta) * d.n_omega, 0.0);
  for (int i = 0; i < s.n_theta; ++i) {
    const std::vector<double> mag =
        dft::magnitudes(&s.data[static_cast<std::size_t>(i) * s.n_tau], s.n_tau);
    for (int w = 0; w < d.n_omega; ++w) d.at(i, w) = mag[w];
  }
  refresh_norm(d);
  return d;
}

void refresh_norm(TiRing& d) {
  double sq = 0.0;
  for (double v : d.data) sq += v * v;
  d.norm = std::sqrt(sq);
}

TiRing circular_row_shift(const TiRing& d, int rows) {
  TiRing out = d;
  const int n = d.n_theta;
  if (n == 0) return out;
  int r = rows % n;
  if (r < 0) r += n;
  if (r == 0) return out;
  for (int i = 0; i < n; ++i) {
    const int src = (i - r + n) % n;
    for (int w = 0; w < d.n_omega; ++w) out.at(i, w) = d.at(src, w);
  }
  return out;
}

SimilarityResult correlate_rows(const double* q, const double* d, int rows,
                                int cols, bool normalize) {
  SimilarityResult res;
  res.profile = dft::row_shift_correlation(q, d, rows, cols);
  if (normalize) {
    double nq = 0.0, nd = 0.0;
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    for (std::size_t k = 0; k < total; ++k) {
      nq += q[k] * q[k];
      nd += d[k] * d[k];
    }
    const double denom = std::sqrt(nq) * std::sqrt(nd);
    if (denom <= 0.0) {
      // degenerate operand: report zero similarity rather than NaN
      std::fill(res.profile.begin(), res.profile.end(), 0.0);
      res.score = 0.0;
      res.best_shift = 0;
      return res;
    }
    for (double& v : res.profile) v /= denom;
  }
  res.best_shift = 0;
  res.score = res.profile[0];
  for (int b = 1; b < rows; ++b) {
    if (res.profile[b] > res.score) {
      res.score = res.profile[b];
      res.best_shift = b;
    }
  }
  return res;
}

SimilarityResult similarity(const TiRing& q, const TiRing& d, bool normalize) {
  if (q.n_theta != d.n_theta || q.n_omega != d.n_omega)
    throw DimensionError("similarity: descriptor shapes differ");
  return correlate_rows(q.data.data(), d.data.data(), q.n_theta, q.n_omega,
                        normalize);
}

SimilarityResult similarity_direct(const TiRing& q, const TiRing& d,
                                   bool normalize) {
  if (q.n_theta != d.n_theta || q.n_omega != d.n_omega)
    throw DimensionError("similarity: descriptor shapes differ");
  const int n = q.n_theta;
  const int m = q.n_omega;
  SimilarityResult res;
  res.profile.assign(n, 0.0);
  for (int b = 0; b < n; ++b) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const int src = (i - b + n) % n;
      for (int w = 0; w < m; ++w) acc += q.at(i, w) * d.at(src, w);
    }
    res.profile[b] = acc;
  }
  if (normalize) {
    const double denom = q.norm * d.norm;
    if (denom <= 0.0) {
      std::fill(res.profile.begin(), res.profile.end(), 0.0);
      return res;
    }
    for (double& v : res.profile) v /= denom;
  }
  res.best_shift = 0;
  res.score = res.profile[0];
  for (int b = 1; b < n; ++b) {
    if (res.profile[b] > res.score) {
      res.score = res.profile[b];
      res.best_shift = b;
    }
  }
  return res;
}

}  // namespace ringloc
