#include "tapersim/calibration.hpp"

#include <cmath>

#include "tapersim/errors.hpp"
#include "tapersim/field_io.hpp"
#include "tapersim/nelder_mead.hpp"

namespace tapersim {

namespace {

// Search space: value = lo + t * (hi - lo), t in [0, 1].
struct ParamBox {
  double lo, hi;
  double decode(double t) const { return lo + t * (hi - lo); }
  double encode(double v) const { return (v - lo) / (hi - lo); }
};

// Bounds keep the search physical: contrasts within the model's sanity
// range, footprints a few um and elongated vertically, volume slopes
// small enough that rerun footprints stay within a grid cell.
constexpr ParamBox kDnMax{1e-4, 5e-3};
constexpr ParamBox kWx0{1.0, 6.0};
constexpr ParamBox kWy0{1.5, 12.0};
constexpr ParamBox kSlopeX{0.0, 0.6};
constexpr ParamBox kSlopeY{0.0, 0.6};
constexpr ParamBox kSatDose{0.01, 0.5};
constexpr ParamBox kContrastRise{0.2, 6.0};

MaterialModel decode(const std::vector<double>& t, const MaterialModel& base) {
  MaterialModel m = base;
  m.dn_max = kDnMax.decode(t[0]);
  m.wx0_um = kWx0.decode(t[1]);
  m.wy0_um = kWy0.decode(t[2]);
  m.volume_slope_x = kSlopeX.decode(t[3]);
  m.volume_slope_y = kSlopeY.decode(t[4]);
  m.saturation_dose = kSatDose.decode(t[5]);
  m.contrast_rise = kContrastRise.decode(t[6]);
  return m;
}

std::vector<double> encode(const MaterialModel& m) {
  return {kDnMax.encode(m.dn_max),          kWx0.encode(m.wx0_um),
          kWy0.encode(m.wy0_um),            kSlopeX.encode(m.volume_slope_x),
          kSlopeY.encode(m.volume_slope_y), kSatDose.encode(m.saturation_dose),
          kContrastRise.encode(m.contrast_rise)};
}

double residual_of(const CalibrationAchieved& a,
                   const CalibrationTargets& goals) {
  auto rel = [](double achieved, double goal) {
    return (achieved - goal) / goal;
  };
  const double r1 = rel(a.eta_regular, goals.eta_regular);
  const double r2 = rel(a.eta_taper, goals.eta_taper);
  const double r3 = rel(a.mfd_ratio, goals.mfd_ratio);
  return r1 * r1 + r2 * r2 + r3 * r3;
}

double max_rel_error(const CalibrationAchieved& a,
                     const CalibrationTargets& goals) {
  return std::max({std::abs(a.eta_regular - goals.eta_regular) /
                       goals.eta_regular,
                   std::abs(a.eta_taper - goals.eta_taper) / goals.eta_taper,
                   std::abs(a.mfd_ratio - goals.mfd_ratio) / goals.mfd_ratio});
}

} // namespace

CalibrationAchieved evaluate_model(const MaterialModel& model,
                                   const CalibrationSetup& setup) {
  CalibrationAchieved a;

  const IndexProfile regular =
      single_pass_profile(setup.taper_params.p0, model, setup.grid);
  const GuidedMode regular_mode =
      solve_fundamental(regular, setup.wavelength_nm, setup.solver);
  const CouplingReport regular_report =
      coupling_report(regular_mode.field, setup.fiber);

  const TaperIndexMap map(setup.taper_params, model, setup.grid,
                          setup.taper_params.taper_length_mm);
  const IndexProfile facet = taper_profile_at(map, map.z_extent_mm());
  const GuidedMode facet_mode =
      solve_fundamental(facet, setup.wavelength_nm, setup.solver);
  const CouplingReport facet_report =
      coupling_report(facet_mode.field, setup.fiber);

  a.eta_regular = regular_report.eta;
  a.eta_taper = facet_report.eta;
  a.mfd_ratio = regular_report.mfd.mfd_h_um / regular_report.fiber_mfd_um;
  return a;
}

CalibrationResult calibrate_model(const CalibrationTargets& targets,
                                  const CalibrationSetup& setup) {
  const MaterialModel base = setup.start;
  base.validate();
  setup.taper_params.validate();

  auto objective = [&](const std::vector<double>& t) {
    const MaterialModel m = decode(t, base);
    try {
      return residual_of(evaluate_model(m, setup), targets);
    } catch (const physics_error&) {
      // Cutoff or non-convergence: push the search away, smoothly
      // enough that the simplex can still crawl out.
      return 1e3;
    }
  };

  NelderMeadOptions options;
  options.max_evaluations = setup.max_evaluations;
  options.f_target = 1e-6;

  const std::vector<double> start = encode(base);
  const std::vector<double> step(start.size(), 0.12);
  const std::vector<double> lower(start.size(), 0.0);
  const std::vector<double> upper(start.size(), 1.0);

  const NelderMeadResult nm =
      nelder_mead_minimize(objective, start, step, lower, upper, options);

  CalibrationResult result;
  result.model = decode(nm.x, base);
  result.evaluations = nm.evaluations;
  try {
    result.achieved = evaluate_model(result.model, setup);
    result.residual = residual_of(result.achieved, targets);
    result.converged = max_rel_error(result.achieved, targets) <=
                       setup.rel_error_ok;
  } catch (const physics_error&) {
    result.residual = 1e3;
    result.converged = false;
  }
  return result;
}

std::vector<std::string> calibration_report_rows(
    const CalibrationTargets& targets, const CalibrationAchieved& achieved) {
  auto row = [](const char* name, double goal, double got) {
    return std::string(name) + "," + format_double(goal) + "," +
           format_double(got) + "," + format_double((got - goal) / goal);
  };
  return {
      row("eta_regular", targets.eta_regular, achieved.eta_regular),
      row("eta_taper", targets.eta_taper, achieved.eta_taper),
      row("mfd_ratio", targets.mfd_ratio, achieved.mfd_ratio),
  };
}

} // namespace tapersim
