#pragma once

#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/radon.hpp"

namespace ringloc {

/**
 * Translation-invariant place descriptor.
 *
 * Row i holds the DFT magnitude spectrum of sinogram row i over the tau axis
 * (n_tau/2 + 1 non-redundant bins). A translation of the underlying scan only
 * shifts each sinogram row circularly, which leaves the row magnitudes
 * untouched, so the descriptor is exactly invariant to integer tau shifts.
 * A rotation by one angular bin circularly shifts descriptor rows, which the
 * similarity search below maximizes over.
 */
struct TiRing {
  int n_theta = 0;
  int n_omega = 0;           // n_tau/2 + 1
  std::vector<double> data;  // row-major n_theta x n_omega
  double norm = 0.0;         // Frobenius norm of data

  double at(int i, int w) const {
    return data[static_cast<std::size_t>(i) * n_omega + w];
  }
  double& at(int i, int w) {
    return data[static_cast<std::size_t>(i) * n_omega + w];
  }
};

TiRing ti_ring(const Sinogram& s);

/// Recomputes the cached Frobenius norm (used after filling data manually or
/// loading from disk).
void refresh_norm(TiRing& d);

/// Row-shifted copy, same content convention as the sinogram overload.
TiRing circular_row_shift(const TiRing& d, int rows);

struct SimilarityResult {
  double score = 0.0;
  int best_shift = 0;           // row shift applied to d at the maximum
  std::vector<double> profile;  // correlation per candidate shift, n_theta long
};

/// Maximizes sum_{i,w} q(i,w) * d((i - b) mod n_theta, w) over all circular
/// row shifts b of the database descriptor. With `normalize` the profile is
/// divided by ||q||*||d|| so identical descriptors score 1; if either norm is
/// zero the result is all zeros (degenerate input, caller decides).
/// Ties in the profile resolve to the smallest shift index.
SimilarityResult similarity(const TiRing& q, const TiRing& d,
                            bool normalize = true);

/// O(n_theta^2 * n_omega) reference implementation of `similarity`, kept for
/// validation.
SimilarityResult similarity_direct(const TiRing& q, const TiRing& d,
                                   bool normalize = true);

/// Shared core: row-shift correlation search over two row-major matrices of
/// identical shape. `similarity` forwards here; raw-sinogram scoring in the
/// evaluation harness reuses it directly.
SimilarityResult correlate_rows(const double* q, const double* d, int rows,
                                int cols, bool normalize);

}  // namespace ringloc
