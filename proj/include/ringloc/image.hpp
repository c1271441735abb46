#pragma once

#include <vector>

#include "ringloc/common.hpp"
#include "ringloc/types.hpp"

namespace ringloc {

/// Dense real-valued raster, row-major. Coordinates follow the array: x is
/// the column index, y the row index, pixel centers at integer positions.
struct Image {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Image() = default;
  Image(int rows_, int cols_) : rows(rows_), cols(cols_) {
    data.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
  }

  double at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * cols + col];
  }
  double& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * cols + col];
  }
};

Image to_image(const BevGrid& grid);

/// Bilinear sample of the image interpolant, zero outside the support.
inline double bilinear_at(const Image& img, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  if (x0 < -1 || y0 < -1 || x0 >= img.cols || y0 >= img.rows) return 0.0;
  const double fx = x - x0;
  const double fy = y - y0;
  const double* d = img.data.data();
  const int cols = img.cols;
  const bool x0in = x0 >= 0;
  const bool x1in = x0 + 1 < cols;
  const bool y0in = y0 >= 0;
  const bool y1in = y0 + 1 < img.rows;
  const double v00 = (x0in && y0in) ? d[static_cast<std::size_t>(y0) * cols + x0] : 0.0;
  const double v10 = (x1in && y0in) ? d[static_cast<std::size_t>(y0) * cols + x0 + 1] : 0.0;
  const double v01 = (x0in && y1in) ? d[static_cast<std::size_t>(y0 + 1) * cols + x0] : 0.0;
  const double v11 = (x1in && y1in) ? d[static_cast<std::size_t>(y0 + 1) * cols + x0 + 1] : 0.0;
  return (v00 * (1.0 - fx) + v10 * fx) * (1.0 - fy) +
         (v01 * (1.0 - fx) + v11 * fx) * fy;
}

/// Rotates image content by `angle` radians about the raster center
/// ((cols-1)/2, (rows-1)/2), counter-clockwise in index space (x right,
/// y down the rows). Samples the bilinear interpolant; content leaving the
/// frame is lost, entering regions are zero.
Image rotate_image(const Image& img, double angle);

/// Shifts image content by (dx, dy) pixels (columns, rows), zero fill.
Image translate_image(const Image& img, double dx, double dy);

double total_mass(const Image& img);

}  // namespace ringloc
