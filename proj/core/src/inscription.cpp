#include "tapersim/inscription.hpp"

#include <algorithm>
#include <cmath>

#include "tapersim/errors.hpp"

namespace tapersim {

namespace {

// Reruns only touch samples whose existing change exceeds this fraction
// of the profile peak; keeps the modified region pinned to the first pass.
constexpr double kRerunFloorRel = 1e-6;

// The ramp starts just under the rerun threshold so the taper joins the
// regular waveguide with no step at all.
constexpr double kRampStartFactor = 0.999;

void fill_gaussian_axis(std::vector<double>& out, int n, double coord0,
                        double step, double half_width) {
  out.resize(n);
  for (int k = 0; k < n; ++k) {
    const double u = (coord0 + k * step) / half_width;
    out[k] = std::exp(-2.0 * u * u);
  }
}

} // namespace

void InscriptionParams::validate() const {
  if (p0 <= 1.0)
    throw config_error("InscriptionParams: p0 must exceed the threshold (> 1)");
  if (pa_over_p0 <= 0.0 || pa_over_p0 > 1.0)
    throw config_error("InscriptionParams: pa_over_p0 must lie in (0, 1]");
  if (reps < 0)
    throw config_error("InscriptionParams: reps must be >= 0");
  if (reps > 0 && taper_length_mm <= 0.0)
    throw config_error("InscriptionParams: taper_length must be positive");
}

void MaterialModel::validate() const {
  if (dn_max <= 0.0 || dn_max > 5e-3)
    throw config_error("MaterialModel: dn_max out of (0, 5e-3]");
  if (wx0_um <= 0.0 || wy0_um <= 0.0)
    throw config_error("MaterialModel: half-widths must be positive");
  if (volume_slope_x < 0.0 || volume_slope_y < 0.0)
    throw config_error("MaterialModel: volume slopes must be >= 0");
  if (rerun_threshold_factor <= 0.0 || rerun_threshold_factor >= 1.0)
    throw config_error("MaterialModel: rerun_threshold_factor out of (0, 1)");
  if (saturation_dose <= 0.0)
    throw config_error("MaterialModel: saturation_dose must be positive");
  if (contrast_rise <= 0.0)
    throw config_error("MaterialModel: contrast_rise must be positive");
  if (n_clad <= 1.0)
    throw config_error("MaterialModel: n_clad must exceed 1");
}

IndexProfile::IndexProfile(Grid2D grid, std::vector<double> dn, double n_clad)
    : grid_(grid), dn_(std::move(dn)), n_clad_(n_clad) {
  if (dn_.size() != grid_.size())
    throw config_error("IndexProfile: value count does not match grid");
  for (double v : dn_)
    if (v < 0.0)
      throw config_error("IndexProfile: negative index change");
}

double IndexProfile::max_dn() const {
  return dn_.empty() ? 0.0 : *std::max_element(dn_.begin(), dn_.end());
}

IndexProfile single_pass_profile(double p, const MaterialModel& model,
                                 const Grid2D& grid) {
  if (p < 0.0)
    throw config_error("single_pass_profile: negative power");
  model.validate();

  std::vector<double> dn(grid.size(), 0.0);
  if (p > 1.0) {
    const double amplitude =
        model.dn_max * (1.0 - std::exp(-(p - 1.0) / model.contrast_rise));
    const double wx = model.wx0_um + model.volume_slope_x * (p - 1.0);
    const double wy = model.wy0_um + model.volume_slope_y * (p - 1.0);
    std::vector<double> gx, gy;
    fill_gaussian_axis(gx, grid.nx, grid.x0, grid.dx, wx);
    fill_gaussian_axis(gy, grid.ny, grid.y0, grid.dy, wy);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        dn[grid.index(i, j)] = amplitude * gx[i] * gy[j];
  }
  return IndexProfile(grid, std::move(dn), model.n_clad);
}

IndexProfile accumulate_rerun(const IndexProfile& base, double p,
                              const MaterialModel& model) {
  if (p < 0.0)
    throw config_error("accumulate_rerun: negative power");
  model.validate();

  const double threshold = model.rerun_threshold_factor;
  const double peak = base.max_dn();
  if (p <= threshold || peak <= 0.0)
    return base;

  const Grid2D& grid = base.grid();
  // Multiphoton modification is strongly superlinear in power: dose
  // grows quadratically with the excess over the rerun threshold
  // (normalized so dose = 1 at the first-pass threshold).
  const double excess = (p - threshold) / (1.0 - threshold);
  const double dose = excess * excess;
  const double keep = std::exp(-dose / model.saturation_dose);
  // Saturation ceiling: full material contrast over the footprint the
  // rerun power would inscribe. Widths grow with power above the
  // first-pass threshold exactly like a first pass.
  const double wcx = model.wx0_um + model.volume_slope_x * std::max(0.0, p - 1.0);
  const double wcy = model.wy0_um + model.volume_slope_y * std::max(0.0, p - 1.0);
  std::vector<double> gx, gy;
  fill_gaussian_axis(gx, grid.nx, grid.x0, grid.dx, wcx);
  fill_gaussian_axis(gy, grid.ny, grid.y0, grid.dy, wcy);

  const double floor = kRerunFloorRel * peak;
  std::vector<double> dn(base.dn().begin(), base.dn().end());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      const double old = dn[k];
      if (old <= floor)
        continue; // untouched glass stays untouched
      const double ceiling = model.dn_max * gx[i] * gy[j];
      if (ceiling > old)
        dn[k] = ceiling - (ceiling - old) * keep;
    }
  return IndexProfile(grid, std::move(dn), base.n_clad());
}

TaperIndexMap::TaperIndexMap(InscriptionParams params, MaterialModel model,
                             Grid2D grid, double z_extent_mm)
    : params_(params), model_(model), grid_(grid), z_extent_mm_(z_extent_mm) {
  params_.validate();
  model_.validate();
  if (z_extent_mm_ <= 0.0)
    throw config_error("TaperIndexMap: z extent must be positive");
  if (params_.reps > 0 && params_.taper_length_mm > z_extent_mm_)
    throw config_error("TaperIndexMap: taper longer than the map");
}

double TaperIndexMap::ramp_power(double z_mm) const {
  const double p_start = model_.rerun_threshold_factor * kRampStartFactor;
  if (params_.reps == 0)
    return p_start;
  const double taper_start = z_extent_mm_ - params_.taper_length_mm;
  if (z_mm <= taper_start)
    return p_start;
  const double frac = (z_mm - taper_start) / params_.taper_length_mm;
  const double p_end = params_.pa_over_p0 * params_.p0;
  return p_start + (p_end - p_start) * frac;
}

IndexProfile taper_profile_at(const TaperIndexMap& map, double z_mm) {
  if (z_mm < 0.0 || z_mm > map.z_extent_mm())
    throw config_error("taper_profile_at: z outside [0, z_extent]");

  IndexProfile profile =
      single_pass_profile(map.params().p0, map.model(), map.grid());
  if (map.params().reps == 0)
    return profile;

  const double p = map.ramp_power(z_mm);
  for (int r = 0; r < map.params().reps; ++r)
    profile = accumulate_rerun(profile, p, map.model());
  return profile;
}

} // namespace tapersim
