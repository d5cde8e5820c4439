#include "tapersim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "tapersim/errors.hpp"
#include "tapersim/field_io.hpp"

namespace tapersim {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw config_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw config_error("cannot write '" + path.string() + "'");
  os << content;
}

void write_run_meta(const ExperimentConfig& config, const std::string& command,
                    const fs::path& out_dir,
                    const std::vector<std::string>& extra = {}) {
  std::string meta;
  meta += "command = " + command + "\n";
  meta += "config_hash = " + config.config_hash + "\n";
  meta += "model_hash = " + config.model_hash + "\n";
  for (const auto& line : extra)
    meta += line + "\n";
  write_file(out_dir / "run.meta", meta);
}

fs::path ensure_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw config_error("cannot create output directory '" + out_dir + "'");
  return dir;
}

// Facet- or regular-mode metrics at one sweep point.
struct PointMetrics {
  double mfd_h_um = 0.0;
  double mfd_v_um = 0.0;
  double area_um2 = 0.0;
  double eta = 0.0;
};

PointMetrics metrics_of_mode(const GuidedMode& mode, const FiberSpec& fiber) {
  const CouplingReport r = coupling_report(mode.field, fiber);
  return {r.mfd.mfd_h_um, r.mfd.mfd_v_um, r.mfd.area_um2, r.eta};
}

PointMetrics regular_metrics(const ExperimentConfig& config,
                             double wavelength_nm) {
  const IndexProfile profile =
      single_pass_profile(config.params.p0, config.material, config.grid);
  const GuidedMode mode =
      solve_fundamental(profile, wavelength_nm, config.solver);
  return metrics_of_mode(mode, config.fiber);
}

PointMetrics facet_metrics(const ExperimentConfig& config,
                           const InscriptionParams& params,
                           double wavelength_nm) {
  const TaperIndexMap map(params, config.material, config.grid,
                          params.taper_length_mm);
  const IndexProfile facet = taper_profile_at(map, map.z_extent_mm());
  const GuidedMode mode =
      solve_fundamental(facet, wavelength_nm, config.solver);
  return metrics_of_mode(mode, config.fiber);
}

// Deterministic fan-out: results land in input order.
template <typename T>
std::vector<T> parallel_map(int n_workers, int n_items,
                            const std::function<T(int)>& fn) {
  std::vector<T> results(n_items);
  if (n_workers <= 1) {
    for (int i = 0; i < n_items; ++i)
      results[i] = fn(i);
    return results;
  }
  std::vector<std::future<T>> futures;
  futures.reserve(n_items);
  for (int i = 0; i < n_items; ++i)
    futures.push_back(std::async(std::launch::deferred, fn, i));
  // Bounded eager execution keeps at most n_workers running.
  std::vector<std::future<void>> lanes;
  std::atomic<int> next{0};
  for (int w = 0; w < n_workers; ++w)
    lanes.push_back(std::async(std::launch::async, [&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n_items)
          return;
        futures[static_cast<std::size_t>(i)].wait();
      }
    }));
  for (auto& lane : lanes)
    lane.get();
  for (int i = 0; i < n_items; ++i)
    results[i] = futures[static_cast<std::size_t>(i)].get();
  return results;
}

std::string csv_row(double sweep_value, const std::string& variant,
                    const PointMetrics& m, double area_ratio,
                    const std::string& transmission) {
  return format_double(sweep_value) + "," + variant + "," +
         format_double(m.mfd_h_um) + "," + format_double(m.mfd_v_um) + "," +
         format_double(area_ratio) + "," + format_double(m.eta) + "," +
         transmission;
}

constexpr const char* kCsvColumns =
    "variant,mfd_h_um,mfd_v_um,area_ratio,eta,transmission";

} // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  const std::string raw = read_file(path);
  const KeyValueConfig cfg = KeyValueConfig::parse(raw);
  const fs::path base_dir = fs::path(path).parent_path();

  ExperimentConfig ec;
  ec.config_hash = fnv1a_hex(raw);

  ec.wavelength_nm = cfg.get_double("wavelength_nm", 800.0);
  ec.grid = make_grid(cfg.get_double("grid.extent_x_um", 80.0),
                      cfg.get_double("grid.extent_y_um", 80.0),
                      cfg.get_int("grid.nx", 224), cfg.get_int("grid.ny", 224));
  ec.calibration_grid =
      make_grid(cfg.get_double("grid.extent_x_um", 80.0),
                cfg.get_double("grid.extent_y_um", 80.0),
                cfg.get_int("calibration.nx", 128),
                cfg.get_int("calibration.ny", 128));

  ec.fiber.mfd_at_reference_um = cfg.get_double("fiber.mfd_um", 5.5);
  ec.fiber.reference_wavelength_nm =
      cfg.get_double("fiber.reference_wavelength_nm", 800.0);
  ec.fiber.scaling_exponent = cfg.get_double("fiber.scaling_exponent", 1.0);

  ec.params = params_from_config(cfg, "params.");

  ec.solver.tolerance = cfg.get_double("solver.tolerance", 1e-8);
  ec.solver.max_iterations = cfg.get_int("solver.max_iterations", 200);

  ec.bpm.dz_um = cfg.get_double("bpm.dz_um", 5.0);
  ec.bpm.absorber_width_um = cfg.get_double("bpm.absorber_width_um", 6.0);
  ec.bpm.absorber_strength = cfg.get_double("bpm.absorber_strength", 0.15);
  ec.bpm.solver = ec.solver;

  ec.sweep.pa_min = cfg.get_double("sweep.pa_min", ec.sweep.pa_min);
  ec.sweep.pa_max = cfg.get_double("sweep.pa_max", ec.sweep.pa_max);
  ec.sweep.pa_steps = cfg.get_int("sweep.pa_steps", ec.sweep.pa_steps);
  ec.sweep.wavelength_min_nm =
      cfg.get_double("sweep.wavelength_min_nm", ec.sweep.wavelength_min_nm);
  ec.sweep.wavelength_max_nm =
      cfg.get_double("sweep.wavelength_max_nm", ec.sweep.wavelength_max_nm);
  ec.sweep.wavelength_steps =
      cfg.get_int("sweep.wavelength_steps", ec.sweep.wavelength_steps);
  if (cfg.has("sweep.reps_list"))
    ec.sweep.reps_list = cfg.get_int_list("sweep.reps_list");
  if (cfg.has("sweep.lengths_mm"))
    ec.sweep.lengths_mm = cfg.get_double_list("sweep.lengths_mm");
  if (ec.sweep.pa_steps < 1 || ec.sweep.wavelength_steps < 1)
    throw config_error("sweep step counts must be >= 1");
  if (ec.sweep.pa_steps > 1 && ec.sweep.pa_max <= ec.sweep.pa_min)
    throw config_error("sweep.pa range is degenerate");
  if (ec.sweep.wavelength_steps > 1 &&
      ec.sweep.wavelength_max_nm <= ec.sweep.wavelength_min_nm)
    throw config_error("sweep.wavelength range is degenerate");

  ec.targets.eta_regular = cfg.get_double("calibration.eta_regular", 0.52);
  ec.targets.eta_taper = cfg.get_double("calibration.eta_taper", 0.77);
  ec.targets.mfd_ratio = cfg.get_double("calibration.mfd_ratio", 2.0);
  ec.calibration_max_evals = cfg.get_int("calibration.max_evals", 350);
  ec.threads = cfg.get_int("threads", 0);

  ec.material_source = cfg.get_string("material.source", "calibrate");
  if (ec.material_source == "calibrate") {
    // Start model, overridable key by key.
    ec.material = material_from_config(cfg, "material.");
    KeyValueConfig serialized;
    material_to_config(ec.material, serialized);
    ec.model_hash = fnv1a_hex(serialized.serialize());
  } else if (ec.material_source == "file") {
    fs::path model_path(cfg.get_string("material.file"));
    if (model_path.is_relative())
      model_path = base_dir / model_path;
    const std::string model_raw = read_file(model_path.string());
    ec.material = material_from_config(KeyValueConfig::parse(model_raw));
    ec.model_hash = fnv1a_hex(model_raw);
  } else {
    throw config_error("material.source must be 'calibrate' or 'file'");
  }

  ec.bpm.n_ref = cfg.get_double("bpm.n_ref", ec.material.n_clad);
  return ec;
}

CalibrationResult run_calibrate(const ExperimentConfig& config,
                                const std::string& out_dir) {
  const fs::path dir = ensure_out_dir(out_dir);

  CalibrationSetup setup;
  setup.grid = config.calibration_grid;
  setup.wavelength_nm = config.wavelength_nm;
  setup.fiber = config.fiber;
  setup.taper_params = config.params;
  if (setup.taper_params.reps == 0)
    throw config_error("calibrate: params.reps must be > 0 (the taper target "
                       "needs a taper)");
  setup.solver = config.solver;
  setup.start = config.material;
  setup.max_evaluations = config.calibration_max_evals;

  CalibrationResult result;
  if (config.material_source == "file") {
    // A pre-calibrated model: echo its achieved values; refit only if
    // it misses the targets.
    result.model = config.material;
    result.achieved = evaluate_model(result.model, setup);
    const CalibrationTargets& t = config.targets;
    const double worst = std::max(
        {std::abs(result.achieved.eta_regular - t.eta_regular) / t.eta_regular,
         std::abs(result.achieved.eta_taper - t.eta_taper) / t.eta_taper,
         std::abs(result.achieved.mfd_ratio - t.mfd_ratio) / t.mfd_ratio});
    if (worst <= setup.rel_error_ok) {
      result.converged = true;
      result.residual = 0.0; // recomputed below for the report
      auto rel = [](double a, double g) { return (a - g) / g; };
      result.residual =
          rel(result.achieved.eta_regular, t.eta_regular) *
              rel(result.achieved.eta_regular, t.eta_regular) +
          rel(result.achieved.eta_taper, t.eta_taper) *
              rel(result.achieved.eta_taper, t.eta_taper) +
          rel(result.achieved.mfd_ratio, t.mfd_ratio) *
              rel(result.achieved.mfd_ratio, t.mfd_ratio);
    } else {
      CalibrationSetup refit = setup;
      refit.start = config.material;
      result = calibrate_model(config.targets, refit);
    }
  } else {
    result = calibrate_model(config.targets, setup);
  }

  KeyValueConfig model_cfg;
  material_to_config(result.model, model_cfg);
  write_file(dir / "model.cfg", model_cfg.serialize());

  std::string report = "target,goal,achieved,rel_error\n";
  for (const auto& row : calibration_report_rows(config.targets,
                                                 result.achieved))
    report += row + "\n";
  write_file(dir / "calibration_report.csv", report);

  write_run_meta(config, "calibrate", dir,
                 {"model_out_hash = " + fnv1a_hex(model_cfg.serialize()),
                  "converged = " + std::string(result.converged ? "1" : "0"),
                  "residual = " + format_double(result.residual),
                  "evaluations = " + std::to_string(result.evaluations)});
  return result;
}

namespace {

void require_model_file(const ExperimentConfig& config) {
  if (config.material_source != "file")
    throw config_error("this command needs a calibrated model: set "
                       "material.source = file (run `tapersim calibrate` "
                       "first)");
}

int worker_count(const ExperimentConfig& config) {
  if (config.threads > 0)
    return config.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

void run_sweep_power(const ExperimentConfig& config,
                     const std::string& out_dir) {
  require_model_file(config);
  const fs::path dir = ensure_out_dir(out_dir);

  std::vector<double> pa_values;
  for (int k = 0; k < config.sweep.pa_steps; ++k) {
    const double t = config.sweep.pa_steps == 1
                         ? 0.0
                         : static_cast<double>(k) / (config.sweep.pa_steps - 1);
    pa_values.push_back(config.sweep.pa_min +
                         t * (config.sweep.pa_max - config.sweep.pa_min));
  }

  const PointMetrics baseline = regular_metrics(config, config.wavelength_nm);

  const auto tapered = parallel_map<PointMetrics>(
      worker_count(config), static_cast<int>(pa_values.size()),
      [&](int k) {
        InscriptionParams p = config.params;
        p.pa_over_p0 = pa_values[static_cast<std::size_t>(k)];
        return facet_metrics(config, p, config.wavelength_nm);
      });

  std::string csv = std::string("pa_over_p0,") + kCsvColumns + "\n";
  csv += csv_row(0.0, "regular", baseline, 1.0, "") + "\n";
  for (std::size_t k = 0; k < pa_values.size(); ++k)
    csv += csv_row(pa_values[k], "tapered", tapered[k],
                   tapered[k].area_um2 / baseline.area_um2, "") +
           "\n";
  write_file(dir / "sweep_power.csv", csv);
  write_run_meta(config, "sweep-power", dir);
}

void run_sweep_wavelength(const ExperimentConfig& config,
                          const std::string& out_dir) {
  require_model_file(config);
  const fs::path dir = ensure_out_dir(out_dir);

  std::vector<double> wavelengths;
  for (int k = 0; k < config.sweep.wavelength_steps; ++k) {
    const double t =
        config.sweep.wavelength_steps == 1
            ? 0.0
            : static_cast<double>(k) / (config.sweep.wavelength_steps - 1);
    wavelengths.push_back(
        config.sweep.wavelength_min_nm +
        t * (config.sweep.wavelength_max_nm - config.sweep.wavelength_min_nm));
  }

  struct WavelengthPoint {
    PointMetrics regular, tapered;
  };
  const auto points = parallel_map<WavelengthPoint>(
      worker_count(config), static_cast<int>(wavelengths.size()),
      [&](int k) {
        const double wl = wavelengths[static_cast<std::size_t>(k)];
        return WavelengthPoint{regular_metrics(config, wl),
                               facet_metrics(config, config.params, wl)};
      });

  std::string csv = std::string("wavelength_nm,") + kCsvColumns + "\n";
  for (std::size_t k = 0; k < wavelengths.size(); ++k) {
    csv += csv_row(wavelengths[k], "regular", points[k].regular, 1.0, "") +
           "\n";
    csv += csv_row(wavelengths[k], "tapered", points[k].tapered,
                   points[k].tapered.area_um2 / points[k].regular.area_um2,
                   "") +
           "\n";
  }
  write_file(dir / "sweep_wavelength.csv", csv);
  write_run_meta(config, "sweep-wavelength", dir);
}

void run_sweep_reps(const ExperimentConfig& config,
                    const std::string& out_dir) {
  require_model_file(config);
  const fs::path dir = ensure_out_dir(out_dir);

  struct RepsPoint {
    PointMetrics metrics;
    double transmission;
  };
  const auto& reps_list = config.sweep.reps_list;
  const PointMetrics baseline = regular_metrics(config, config.wavelength_nm);

  const auto points = parallel_map<RepsPoint>(
      worker_count(config), static_cast<int>(reps_list.size()),
      [&](int k) {
        InscriptionParams p = config.params;
        p.reps = reps_list[static_cast<std::size_t>(k)];
        const double z_extent =
            std::max(p.taper_length_mm, config.params.taper_length_mm);
        const TaperIndexMap map(p, config.material, config.grid, z_extent);

        const IndexProfile start_profile = taper_profile_at(map, 0.0);
        const GuidedMode input = solve_fundamental(
            start_profile, config.wavelength_nm, config.solver);
        const PropagationResult prop = propagate(map, input, config.bpm);

        const IndexProfile facet = taper_profile_at(map, map.z_extent_mm());
        const GuidedMode facet_mode =
            solve_fundamental(facet, config.wavelength_nm, config.solver);
        return RepsPoint{metrics_of_mode(facet_mode, config.fiber),
                         prop.transmission};
      });

  std::string csv = std::string("reps,") + kCsvColumns + "\n";
  for (std::size_t k = 0; k < reps_list.size(); ++k) {
    const auto& pt = points[k];
    const bool regular = reps_list[k] == 0;
    csv += csv_row(reps_list[k], regular ? "regular" : "tapered", pt.metrics,
                   pt.metrics.area_um2 / baseline.area_um2,
                   format_double(pt.transmission)) +
           "\n";
  }
  write_file(dir / "sweep_reps.csv", csv);
  write_run_meta(config, "sweep-reps", dir);
}

void run_adiabatic_scan(const ExperimentConfig& config,
                        const std::string& out_dir) {
  require_model_file(config);
  const fs::path dir = ensure_out_dir(out_dir);

  InscriptionParams p = config.params;
  if (p.reps == 0)
    throw config_error("adiabatic-scan: params.reps must be > 0");
  const auto scan =
      adiabatic_scan(p, config.material, config.sweep.lengths_mm, config.grid,
                     config.wavelength_nm, config.bpm);

  // Facet metrics are length-independent (same ramp endpoints).
  const PointMetrics baseline = regular_metrics(config, config.wavelength_nm);
  const PointMetrics facet = facet_metrics(config, p, config.wavelength_nm);

  std::string csv = std::string("length_mm,") + kCsvColumns + "\n";
  csv += csv_row(0.0, "regular", baseline, 1.0, format_double(1.0)) + "\n";
  double flagged = -1.0;
  for (const auto& [length, transmission] : scan) {
    csv += csv_row(length, "tapered", facet,
                   facet.area_um2 / baseline.area_um2,
                   format_double(transmission)) +
           "\n";
    if (flagged < 0.0 && transmission >= 0.99)
      flagged = length;
  }
  write_file(dir / "adiabatic_scan.csv", csv);

  std::vector<std::string> extra;
  if (flagged >= 0.0)
    extra.push_back("shortest_99pct_mm = " + format_double(flagged));
  else
    extra.push_back("shortest_99pct_mm = none");
  write_run_meta(config, "adiabatic-scan", dir, extra);
}

} // namespace tapersim
