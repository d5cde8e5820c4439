#ifndef TAPERSIM_INSCRIPTION_HPP
#define TAPERSIM_INSCRIPTION_HPP

#include <span>
#include <vector>

#include "tapersim/grid.hpp"

namespace tapersim {

enum class RampShape { linear };

/// Fabrication knobs for one waveguide. Powers are dimensionless
/// multiples of the first-pass modification threshold; the paper only
/// ever reports power ratios, so absolute watts never enter the model.
struct InscriptionParams {
  double p0 = 1.5;          // regular-pass power, must exceed 1
  double pa_over_p0 = 2.0 / 3.0; // ramp ceiling as a fraction of p0
  int reps = 0;             // additional runs; 0 = regular waveguide
  double taper_length_mm = 3.0;
  RampShape ramp = RampShape::linear;

  void validate() const;
};

/// Calibrated material response of the substrate to inscription.
/// Half-widths are 1/e^2 half-widths of the index change in um.
struct MaterialModel {
  double dn_max = 2.4e-3;          // saturated peak index contrast
  double wx0_um = 3.1;             // modification half-width at threshold
  double wy0_um = 6.5;             // vertically elongated
  double volume_slope_x = 0.35;    // half-width growth per unit power above 1
  double volume_slope_y = 0.35;
  double rerun_threshold_factor = 0.95; // rerun threshold, relative to 1
  double saturation_dose = 3.0;    // dose scale of contrast accumulation
  double contrast_rise = 0.7;      // power scale of first-pass contrast
  double n_clad = 1.45;            // substrate index

  void validate() const;
};

/// Refractive-index perturbation dn(x,y) >= 0 over a background n_clad.
class IndexProfile {
public:
  IndexProfile(Grid2D grid, std::vector<double> dn, double n_clad);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> dn() const { return dn_; }
  double n_clad() const { return n_clad_; }
  double at(int i, int j) const { return dn_[grid_.index(i, j)]; }
  double max_dn() const;

private:
  Grid2D grid_;
  std::vector<double> dn_;
  double n_clad_;
};

/// Index change of one inscription pass at relative power p: zero at or
/// below threshold, otherwise an elliptical Gaussian whose contrast and
/// half-widths both grow monotonically with p.
IndexProfile single_pass_profile(double p, const MaterialModel& model,
                                 const Grid2D& grid);

/// One additional run over an existing profile. Only samples where the
/// base change exceeds a floor are touched, and the change accumulates
/// toward a saturation ceiling, so repeated application converges and
/// the 1/e^2 footprint stays put. Powers at or below the (reduced)
/// rerun threshold are no-ops.
IndexProfile accumulate_rerun(const IndexProfile& base, double p,
                              const MaterialModel& model);

/// z-resolved index map of a waveguide whose last taper_length mm
/// before the facet carry `reps` extra runs under a linear power ramp.
/// z = 0 is the map start, z = z_extent_mm the facet.
class TaperIndexMap {
public:
  TaperIndexMap(InscriptionParams params, MaterialModel model, Grid2D grid,
                double z_extent_mm);

  const InscriptionParams& params() const { return params_; }
  const MaterialModel& model() const { return model_; }
  const Grid2D& grid() const { return grid_; }
  double z_extent_mm() const { return z_extent_mm_; }

  /// Power of the additional runs at position z; below the rerun
  /// threshold outside the taper and at its start.
  double ramp_power(double z_mm) const;

private:
  InscriptionParams params_;
  MaterialModel model_;
  Grid2D grid_;
  double z_extent_mm_;
};

/// Transverse profile at position z: the regular single-pass profile
/// plus `reps` accumulated reruns at the local ramp power.
IndexProfile taper_profile_at(const TaperIndexMap& map, double z_mm);

} // namespace tapersim

#endif
