// tapersim: forward model of fs laser-written waveguide tapers.
//
// Subcommands mirror the measurement campaigns: calibrate fits the
// material model to the measured coupling numbers, the sweep commands
// emit CSV tables of mode sizes, coupling efficiency and transmission
// against ramp power, wavelength, and rerun count, and adiabatic-scan
// hunts for the shortest near-lossless taper.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "tapersim/errors.hpp"
#include "tapersim/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPhysics = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fs laser-written waveguide taper simulator"};
  app.require_subcommand(1);

  CommonArgs calibrate_args, power_args, wavelength_args, reps_args,
      scan_args;
  CLI::App* cmd_calibrate =
      app.add_subcommand("calibrate", "fit the material model to the "
                                      "configured coupling targets");
  add_common(cmd_calibrate, calibrate_args);
  CLI::App* cmd_power = app.add_subcommand(
      "sweep-power", "facet mode size vs the ramp ceiling Pa/P0");
  add_common(cmd_power, power_args);
  CLI::App* cmd_wavelength = app.add_subcommand(
      "sweep-wavelength", "regular and tapered mode size vs wavelength");
  add_common(cmd_wavelength, wavelength_args);
  CLI::App* cmd_reps = app.add_subcommand(
      "sweep-reps", "coupling and transmission vs number of extra runs");
  add_common(cmd_reps, reps_args);
  CLI::App* cmd_scan = app.add_subcommand(
      "adiabatic-scan", "transmission vs taper length");
  add_common(cmd_scan, scan_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_calibrate->parsed()) {
      const auto config =
          tapersim::load_experiment_config(calibrate_args.config_path);
      const auto result =
          tapersim::run_calibrate(config, calibrate_args.out_dir);
      std::printf("calibration %s: residual %.3g after %d evaluations\n",
                  result.converged ? "converged" : "did NOT converge",
                  result.residual, result.evaluations);
      std::printf("  eta_regular %.4f  eta_taper %.4f  mfd_ratio %.4f\n",
                  result.achieved.eta_regular, result.achieved.eta_taper,
                  result.achieved.mfd_ratio);
      return result.converged ? kExitOk : kExitPhysics;
    }
    if (cmd_power->parsed()) {
      const auto config =
          tapersim::load_experiment_config(power_args.config_path);
      tapersim::run_sweep_power(config, power_args.out_dir);
      return kExitOk;
    }
    if (cmd_wavelength->parsed()) {
      const auto config =
          tapersim::load_experiment_config(wavelength_args.config_path);
      tapersim::run_sweep_wavelength(config, wavelength_args.out_dir);
      return kExitOk;
    }
    if (cmd_reps->parsed()) {
      const auto config =
          tapersim::load_experiment_config(reps_args.config_path);
      tapersim::run_sweep_reps(config, reps_args.out_dir);
      return kExitOk;
    }
    if (cmd_scan->parsed()) {
      const auto config =
          tapersim::load_experiment_config(scan_args.config_path);
      tapersim::run_adiabatic_scan(config, scan_args.out_dir);
      return kExitOk;
    }
  } catch (const tapersim::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const tapersim::physics_error& e) {
    std::fprintf(stderr, "physics failure: %s\n", e.what());
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
