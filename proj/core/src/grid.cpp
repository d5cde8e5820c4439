#include "tapersim/grid.hpp"

#include "tapersim/errors.hpp"

namespace tapersim {

Grid2D make_grid(double extent_x_um, double extent_y_um, int nx, int ny) {
  if (extent_x_um <= 0.0 || extent_y_um <= 0.0)
    throw config_error("make_grid: extents must be positive");
  if (nx < 8 || ny < 8)
    throw config_error("make_grid: sample counts must be at least 8");

  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.dx = extent_x_um / nx;
  g.dy = extent_y_um / ny;
  g.x0 = -extent_x_um / 2.0;
  g.y0 = -extent_y_um / 2.0;
  return g;
}

} // namespace tapersim
