#ifndef TAPERSIM_PROPAGATION_HPP
#define TAPERSIM_PROPAGATION_HPP

#include <functional>
#include <vector>

#include "tapersim/field.hpp"
#include "tapersim/inscription.hpp"
#include "tapersim/mode_solver.hpp"

namespace tapersim {

struct PropagationConfig {
  double dz_um = 5.0;
  double absorber_width_um = 6.0;
  double absorber_strength = 0.15; // amplitude decay rate at full depth, 1/um
  double n_ref = 1.45;             // paraxial reference index
  SolverConfig solver;             // for the facet mode projection

  void validate() const;
};

struct PropagationResult {
  ScalarField output;  // facet field
  double transmission; // power fraction in the facet guided mode
  double radiated;     // absorbed or left unguided
};

/// Split-step Fourier paraxial propagation of an arbitrary input field
/// through a z-dependent index profile (z in mm, transverse grid fixed).
/// Periodic transverse boundaries with an absorbing margin. The
/// profile is sampled at step midpoints (Strang splitting).
ScalarField propagate_field(
    const std::function<IndexProfile(double z_mm)>& profile_at,
    const Grid2D& grid, const ScalarField& input, double z_extent_mm,
    const PropagationConfig& config);

/// Propagates the input guided mode through the taper map and projects
/// the facet field onto the facet's own guided mode. Requires at least
/// 100 steps across the taper.
PropagationResult propagate(const TaperIndexMap& map, const GuidedMode& input,
                            const PropagationConfig& config);

/// Transmission of the same taper endpoints swept over taper lengths.
/// The step size shrinks for short tapers so each run keeps at least
/// 128 steps across the taper.
std::vector<std::pair<double, double>> adiabatic_scan(
    const InscriptionParams& params, const MaterialModel& model,
    const std::vector<double>& lengths_mm, const Grid2D& grid,
    double wavelength_nm, const PropagationConfig& config);

} // namespace tapersim

#endif
