#include "tapersim/field.hpp"

#include <cmath>

#include "tapersim/errors.hpp"

namespace tapersim {

ScalarField::ScalarField(Grid2D grid, std::vector<complexd> values,
                         double wavelength_nm)
    : grid_(grid), values_(std::move(values)), wavelength_nm_(wavelength_nm) {
  if (values_.size() != grid_.size())
    throw config_error("ScalarField: value count does not match grid");
}

IntensityProfile::IntensityProfile(Grid2D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw config_error("IntensityProfile: value count does not match grid");
  for (double v : values_)
    if (v < 0.0)
      throw config_error("IntensityProfile: negative intensity sample");
}

ScalarField gaussian_field(const Grid2D& grid, double wx_um, double wy_um,
                           std::pair<double, double> center_um,
                           double wavelength_nm) {
  if (wx_um <= 0.0 || wy_um <= 0.0)
    throw config_error("gaussian_field: waists must be positive");

  std::vector<complexd> values(grid.size());
  // Separable evaluation keeps large grids cheap.
  std::vector<double> gx(grid.nx), gy(grid.ny);
  for (int i = 0; i < grid.nx; ++i) {
    const double u = (grid.x(i) - center_um.first) / wx_um;
    gx[i] = std::exp(-u * u);
  }
  for (int j = 0; j < grid.ny; ++j) {
    const double v = (grid.y(j) - center_um.second) / wy_um;
    gy[j] = std::exp(-v * v);
  }
  double sum_sq = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double a = gx[i] * gy[j];
      values[grid.index(i, j)] = a;
      sum_sq += a * a;
    }
  // Normalize against the discrete power so the unit-power contract
  // holds on coarse grids too.
  const double p = sum_sq * grid.cell_area();
  const double scale = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
  for (auto& v : values)
    v *= scale;
  return ScalarField(grid, std::move(values), wavelength_nm);
}

double power(const ScalarField& field) {
  double sum = 0.0;
  for (const auto& v : field.values())
    sum += std::norm(v);
  return sum * field.grid().cell_area();
}

ScalarField resample(const ScalarField& field, const Grid2D& target) {
  const Grid2D& src = field.grid();
  if (src == target)
    return ScalarField(target,
                       {field.values().begin(), field.values().end()},
                       field.wavelength_nm());

  std::vector<complexd> values(target.size(), complexd{0.0, 0.0});
  for (int j = 0; j < target.ny; ++j) {
    const double y = target.y(j);
    const double fy = (y - src.y0) / src.dy;
    for (int i = 0; i < target.nx; ++i) {
      const double x = target.x(i);
      const double fx = (x - src.x0) / src.dx;
      if (fx < 0.0 || fy < 0.0 || fx > src.nx - 1 || fy > src.ny - 1)
        continue; // outside source extent: stays zero
      int i0 = static_cast<int>(fx);
      int j0 = static_cast<int>(fy);
      if (i0 >= src.nx - 1) i0 = src.nx - 2;
      if (j0 >= src.ny - 1) j0 = src.ny - 2;
      const double tx = fx - i0;
      const double ty = fy - j0;
      const complexd v00 = field.at(i0, j0);
      const complexd v10 = field.at(i0 + 1, j0);
      const complexd v01 = field.at(i0, j0 + 1);
      const complexd v11 = field.at(i0 + 1, j0 + 1);
      values[target.index(i, j)] = (1 - tx) * (1 - ty) * v00 +
                                   tx * (1 - ty) * v10 +
                                   (1 - tx) * ty * v01 + tx * ty * v11;
    }
  }
  return ScalarField(target, std::move(values), field.wavelength_nm());
}

IntensityProfile intensity_of(const ScalarField& field) {
  std::vector<double> values(field.grid().size());
  auto vals = field.values();
  for (std::size_t k = 0; k < vals.size(); ++k)
    values[k] = std::norm(vals[k]);
  return IntensityProfile(field.grid(), std::move(values));
}

} // namespace tapersim
