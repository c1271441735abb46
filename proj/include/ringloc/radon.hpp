#pragma once

#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/image.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

/**
 * Radon sinogram of a square raster.
 *
 * Row i integrates along lines normal to theta_i = 2*pi*i/n_theta; the full
 * [0, 2*pi) range is kept even though rows i and i + n_theta/2 mirror each
 * other, because circular row shifts then realize rotations directly.
 * Column j is the line offset tau_j = -D/2 + j*dtau measured from the raster
 * center, with D = sqrt(2)*side (diagonal extent, pixels) and dtau = D/n_tau.
 *
 * Entries store dtau times the line integral of the bilinear interpolant, so
 * each row sums to the total raster mass and columns are directly comparable
 * across different n_tau.
 */
struct Sinogram {
  int n_theta = 0;
  int n_tau = 0;
  double resolution = 1.0;   // meters per source-raster pixel
  double tau_step_px = 0.0;  // column spacing in source-raster pixels
  std::vector<double> data;  // row-major n_theta x n_tau

  double at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * n_tau + j];
  }
  double& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * n_tau + j];
  }
  double theta_step() const { return 2.0 * kPi / n_theta; }
  double tau_step_m() const { return tau_step_px * resolution; }
};

/// Fast discrete Radon transform. `resolution` tags the sinogram with the
/// source raster's meters-per-pixel so offsets can be converted to meters.
/// Requires a square image, even n_theta >= 4, n_tau >= 2.
Sinogram radon(const Image& img, int n_theta, int n_tau, double resolution,
               Exec exec = Exec::Parallel);
Sinogram radon(const BevGrid& grid, int n_theta, int n_tau,
               Exec exec = Exec::Parallel);

/// Reference transform: dense midpoint quadrature along each line at the tau
/// nodes, `samples_per_line` >= 2*side points per line. Slow and simple; the
/// fast path is validated against it.
Sinogram radon_oracle(const Image& img, int n_theta, int n_tau,
                      double resolution, int samples_per_line);
Sinogram radon_oracle(const BevGrid& grid, int n_theta, int n_tau,
                      int samples_per_line);

/// Circularly shifts rows: output row i is input row (i - rows) mod n_theta,
/// i.e. content moves forward by `rows`. Any integer shift is accepted.
Sinogram circular_row_shift(const Sinogram& s, int rows);

}  // namespace ringloc
