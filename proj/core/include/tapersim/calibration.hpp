#ifndef TAPERSIM_CALIBRATION_HPP
#define TAPERSIM_CALIBRATION_HPP

#include <string>
#include <vector>

#include "tapersim/coupling.hpp"
#include "tapersim/inscription.hpp"
#include "tapersim/mode_solver.hpp"

namespace tapersim {

/// Measured numbers the material model must reproduce at 800 nm.
struct CalibrationTargets {
  double eta_regular = 0.52; // coupling of the untapered waveguide
  double eta_taper = 0.77;   // coupling of the best taper
  double mfd_ratio = 2.0;    // regular H-axis MFD over the fiber MFD
};

/// Everything the forward simulation inside the objective needs.
struct CalibrationSetup {
  Grid2D grid;                  // coarse grids converge fine and run fast
  double wavelength_nm = 800.0;
  FiberSpec fiber;
  InscriptionParams taper_params; // the "best taper" recipe
  SolverConfig solver;
  MaterialModel start;          // initial simplex vertex
  int max_evaluations = 400;
  /// Largest per-target |relative error| the result may carry and
  /// still count as converged.
  double rel_error_ok = 0.10;
};

struct CalibrationAchieved {
  double eta_regular = 0.0;
  double eta_taper = 0.0;
  double mfd_ratio = 0.0;
};

struct CalibrationResult {
  MaterialModel model;          // best found, converged or not
  CalibrationAchieved achieved; // forward values of that model
  double residual = 0.0;        // sum of squared relative errors
  int evaluations = 0;
  bool converged = false;
};

/// Forward values of one model under the setup (regular + taper-facet
/// mode solves, coupling reports against the fiber).
CalibrationAchieved evaluate_model(const MaterialModel& model,
                                   const CalibrationSetup& setup);

/// Derivative-free fit (Nelder-Mead over dn_max, half-widths, volume
/// slopes, saturation dose, and the contrast-rise constant) minimizing
/// the summed squared relative target errors. Deterministic for a
/// given start model. Never throws on non-convergence: the flag and
/// the best-so-far model are in the result.
CalibrationResult calibrate_model(const CalibrationTargets& targets,
                                  const CalibrationSetup& setup);

/// CSV lines `target,goal,achieved,rel_error` for the report file.
std::vector<std::string> calibration_report_rows(
    const CalibrationTargets& targets, const CalibrationAchieved& achieved);

} // namespace tapersim

#endif
