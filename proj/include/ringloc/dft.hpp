#pragma once

#include <complex>
#include <vector>

namespace ringloc::dft {

/// Half-spectrum DFT of a real sequence: out[k] = sum_j in[j] e^{-2pi i jk/n}
/// for k = 0..n/2. `out` must hold n/2+1 entries.
void forward(const double* in, int n, std::complex<double>* out);

/// Magnitudes of the half spectrum, n/2+1 values.
std::vector<double> magnitudes(const double* in, int n);

/// Circular correlation against a shifted copy:
///   out[k] = sum_j a[j] * b[(j - k) mod n]
/// i.e. out[k] scores how well b matches a after b's content moves forward
/// by k positions. Computed as IDFT(conj(DFT b) * DFT a) / n.
std::vector<double> shift_correlation(const double* a, const double* b, int n);

/// Row-shift correlation of two row-major matrices with circular first axis:
///   out[k] = sum_{i,w} a(i, w) * b((i - k) mod rows, w)
/// One inverse transform total; per-column spectra are accumulated in the
/// frequency domain.
std::vector<double> row_shift_correlation(const double* a, const double* b,
                                          int rows, int cols);

}  // namespace ringloc::dft
