#ifndef TAPERSIM_COUPLING_HPP
#define TAPERSIM_COUPLING_HPP

#include <string>
#include <utility>

#include "tapersim/field.hpp"

namespace tapersim {

enum class Axis { H, V };

/// Mode geometry per the 1/e^2-in-intensity convention.
struct MfdReport {
  double mfd_h_um = 0.0;
  double mfd_v_um = 0.0;
  double area_um2 = 0.0; // ellipse through the two widths: pi*h*v/4
  std::pair<double, double> centroid_um{0.0, 0.0};
};

/// Single-mode fiber reference. MFD scales as (lambda/lambda_ref)^exponent.
struct FiberSpec {
  double mfd_at_reference_um = 5.5;
  double reference_wavelength_nm = 800.0;
  double scaling_exponent = 1.0;

  double mfd_at(double wavelength_nm) const;
};

struct CouplingReport {
  double eta = 0.0;
  MfdReport mfd;
  double fiber_mfd_um = 0.0;
  double wavelength_nm = 0.0;
};

/// Full width of the axis cut through the intensity peak at 1/e^2 of
/// the peak, outermost crossings found by linear interpolation.
double mfd_1e2(const IntensityProfile& intensity, Axis axis);

/// Intensity centroid in um.
std::pair<double, double> centroid_of(const IntensityProfile& intensity);

/// MFDs along both axes plus the elliptical mode-field area.
MfdReport mfd_report(const IntensityProfile& intensity);

/// Normalized squared inner product of two fields:
/// |int conj(a) b dA|^2 / (int |a|^2 dA * int |b|^2 dA).
/// Fields on different grids are resampled onto a common grid chosen
/// symmetrically, so the result does not depend on argument order.
double overlap_efficiency(const ScalarField& a, const ScalarField& b);

/// Ideal circular Gaussian fiber mode at the given wavelength,
/// unit power, centered on the origin.
ScalarField fiber_mode(const FiberSpec& spec, double wavelength_nm,
                       const Grid2D& grid);

/// MFDs, area, and coupling efficiency against the fiber mode centered
/// on the waveguide mode's intensity centroid (optimal alignment).
CouplingReport coupling_report(const ScalarField& mode_field,
                               const FiberSpec& spec);

/// Loads a measured near-field image (CSV `x_um,y_um,intensity` or
/// binary PGM with the given pixel pitch), subtracts the median of the
/// outer 5% margin as background, clamps to nonnegative.
IntensityProfile load_intensity_image(const std::string& path,
                                      double pixel_pitch_um);

} // namespace tapersim

#endif
