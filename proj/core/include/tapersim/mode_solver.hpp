#ifndef TAPERSIM_MODE_SOLVER_HPP
#define TAPERSIM_MODE_SOLVER_HPP

#include "tapersim/field.hpp"
#include "tapersim/inscription.hpp"

namespace tapersim {

enum class BoundaryCondition { zero_dirichlet };

struct SolverConfig {
  double tolerance = 1e-8;  // eigen-equation residual, 1/um^2
  int max_iterations = 200; // outer inverse-iteration steps
  BoundaryCondition boundary = BoundaryCondition::zero_dirichlet;
  /// Reject modes whose grid is narrower than 4x their measured MFD.
  bool check_containment = true;

  void validate() const;
};

/// Fundamental guided mode: unit-power real-valued field with positive
/// peak, effective index, and the final eigen-equation residual.
struct GuidedMode {
  ScalarField field;
  double n_eff = 0.0;
  double wavelength_nm = 0.0;
  double residual = 0.0;
};

/// Solves (d2/dx2 + d2/dy2 + k0^2 n(x,y)^2) E = beta^2 E with 5-point
/// finite differences and zero-Dirichlet boundaries; returns the
/// largest-beta^2 eigenpair via shifted inverse power iteration with
/// the shift seeded at k0^2 (n_clad + max dn)^2.
///
/// Throws cutoff_error when no guided mode exists (beta <= k0 n_clad)
/// and convergence_error (carrying the last residual) when the
/// iteration budget runs out.
GuidedMode solve_fundamental(const IndexProfile& profile, double wavelength_nm,
                             const SolverConfig& config = {});

/// Discrete eigen-equation residual ||(L + k0^2 n^2) E - beta^2 E||_2 /
/// ||E||_2 of a mode checked against an arbitrary profile on the same
/// grid.
double mode_residual(const GuidedMode& mode, const IndexProfile& profile);

} // namespace tapersim

#endif
