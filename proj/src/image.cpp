#include "ringloc/image.hpp"

namespace ringloc {

Image to_image(const BevGrid& grid) {
  Image img(grid.size, grid.size);
  for (std::size_t i = 0; i < grid.occupancy.size(); ++i)
    img.data[i] = grid.occupancy[i];
  return img;
}

Image rotate_image(const Image& img, double angle) {
  Image out(img.rows, img.cols);
  const double cx = 0.5 * (img.cols - 1);
  const double cy = 0.5 * (img.rows - 1);
  const double c = std::cos(angle), s = std::sin(angle);
  for (int r = 0; r < img.rows; ++r) {
    for (int col = 0; col < img.cols; ++col) {
      // inverse map: sample where this pixel came from
      const double dx = col - cx;
      const double dy = r - cy;
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      out.at(r, col) = bilinear_at(img, sx, sy);
    }
  }
  return out;
}

Image translate_image(const Image& img, double dx, double dy) {
  Image out(img.rows, img.cols);
  for (int r = 0; r < img.rows; ++r)
    for (int col = 0; col < img.cols; ++col)
      out.at(r, col) = bilinear_at(img, col - dx, r - dy);
  return out;
}

double total_mass(const Image& img) {
  double m = 0.0;
  for (double v : img.data) m += v;
  return m;
}

}  // namespace ringloc
