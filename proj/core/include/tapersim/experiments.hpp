#ifndef TAPERSIM_EXPERIMENTS_HPP
#define TAPERSIM_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "tapersim/calibration.hpp"
#include "tapersim/config.hpp"
#include "tapersim/coupling.hpp"
#include "tapersim/grid.hpp"
#include "tapersim/inscription.hpp"
#include "tapersim/mode_solver.hpp"
#include "tapersim/propagation.hpp"

namespace tapersim {

struct SweepSpec {
  double pa_min = 2.0 / 3.0;
  double pa_max = 1.0;
  int pa_steps = 6;
  double wavelength_min_nm = 632.0;
  double wavelength_max_nm = 950.0;
  int wavelength_steps = 12;
  std::vector<int> reps_list{0, 1, 2, 4, 8, 16};
  std::vector<double> lengths_mm{0.25, 0.5, 1.0, 2.0, 3.0};
};

/// Everything one CLI invocation needs, read from a `key = value`
/// config file. Relative material file paths resolve against the
/// config file's directory.
struct ExperimentConfig {
  Grid2D grid;
  Grid2D calibration_grid; // coarser grid the fit runs on
  double wavelength_nm = 800.0;
  FiberSpec fiber;
  InscriptionParams params;
  SolverConfig solver;
  PropagationConfig bpm;
  SweepSpec sweep;
  CalibrationTargets targets;
  int calibration_max_evals = 350;
  int threads = 0; // 0 = hardware concurrency

  std::string material_source; // "calibrate" or a model file path
  MaterialModel material;      // resolved model (start model when calibrating)

  std::string config_hash; // of the raw config file bytes
  std::string model_hash;  // of the model file / serialized model
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Fits the material model against the configured targets, writes
/// model.cfg, calibration_report.csv and run.meta into out_dir.
CalibrationResult run_calibrate(const ExperimentConfig& config,
                                const std::string& out_dir);

/// Fig. 3 style sweep over the ramp ceiling Pa/P0: facet-mode MFDs per
/// point plus the untapered baseline row. Writes sweep_power.csv.
void run_sweep_power(const ExperimentConfig& config,
                     const std::string& out_dir);

/// Fig. 4 style sweep over wavelength: regular and tapered facet modes
/// per wavelength with the tapered/regular area ratio. Writes
/// sweep_wavelength.csv.
void run_sweep_wavelength(const ExperimentConfig& config,
                          const std::string& out_dir);

/// Fig. 5 style sweep over the number of additional runs: coupling
/// efficiency and propagated transmission per N. Writes sweep_reps.csv.
void run_sweep_reps(const ExperimentConfig& config,
                    const std::string& out_dir);

/// Taper length scan; flags the shortest length reaching 99%
/// transmission in run.meta. Writes adiabatic_scan.csv.
void run_adiabatic_scan(const ExperimentConfig& config,
                        const std::string& out_dir);

} // namespace tapersim

#endif
