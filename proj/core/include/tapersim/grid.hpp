#ifndef TAPERSIM_GRID_HPP
#define TAPERSIM_GRID_HPP

#include <cstddef>

namespace tapersim {

/// Uniform 2D transverse sampling grid. Lengths are micrometers
/// throughout; (x0, y0) is the coordinate of sample (0, 0) and samples
/// are stored row-major with x fastest.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double extent_x() const { return nx * dx; }
  double extent_y() const { return ny * dy; }
  double cell_area() const { return dx * dy; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }

  bool operator==(const Grid2D&) const = default;
};

/// Builds a grid of nx-by-ny samples centered on the origin.
/// dx = extent_x/nx and the first sample sits at -extent_x/2, so for
/// even counts the origin itself is a sample.
Grid2D make_grid(double extent_x_um, double extent_y_um, int nx, int ny);

} // namespace tapersim

#endif
