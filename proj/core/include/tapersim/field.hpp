#ifndef TAPERSIM_FIELD_HPP
#define TAPERSIM_FIELD_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "tapersim/grid.hpp"

namespace tapersim {

using complexd = std::complex<double>;

/// Complex scalar optical field sampled on a Grid2D. Amplitudes are in
/// arbitrary units; the wavelength tag is in nanometers. Immutable
/// after construction.
class ScalarField {
public:
  ScalarField(Grid2D grid, std::vector<complexd> values, double wavelength_nm);

  const Grid2D& grid() const { return grid_; }
  std::span<const complexd> values() const { return values_; }
  double wavelength_nm() const { return wavelength_nm_; }
  complexd at(int i, int j) const { return values_[grid_.index(i, j)]; }

private:
  Grid2D grid_;
  std::vector<complexd> values_;
  double wavelength_nm_;
};

/// Nonnegative real intensity samples, e.g. |E|^2 or a camera image.
class IntensityProfile {
public:
  IntensityProfile(Grid2D grid, std::vector<double> values);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }

private:
  Grid2D grid_;
  std::vector<double> values_;
};

/// Elliptical Gaussian field E ~ exp(-((x-cx)^2/wx^2 + (y-cy)^2/wy^2)),
/// normalized to unit discrete power. The intensity 1/e^2 half-width
/// along x is wx, so the mode field diameter along x is 2*wx.
ScalarField gaussian_field(const Grid2D& grid, double wx_um, double wy_um,
                           std::pair<double, double> center_um,
                           double wavelength_nm);

/// Total power: sum |E|^2 dx dy.
double power(const ScalarField& field);

/// Bilinear resampling of the real and imaginary parts onto a target
/// grid. Target samples outside the source extent are zero.
ScalarField resample(const ScalarField& field, const Grid2D& target);

/// |E|^2 on the field's own grid.
IntensityProfile intensity_of(const ScalarField& field);

} // namespace tapersim

#endif
