#include "tapersim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tapersim/errors.hpp"
#include "tapersim/transforms.hpp"

namespace tapersim {

namespace {

// Squared angular spatial frequencies in FFT layout.
std::vector<double> k_perp_squared(const Grid2D& g) {
  std::vector<double> kx(g.nx), ky(g.ny);
  const double fx = 2.0 * std::numbers::pi / (g.nx * g.dx);
  const double fy = 2.0 * std::numbers::pi / (g.ny * g.dy);
  for (int i = 0; i < g.nx; ++i)
    kx[i] = fx * (i <= g.nx / 2 ? i : i - g.nx);
  for (int j = 0; j < g.ny; ++j)
    ky[j] = fy * (j <= g.ny / 2 ? j : j - g.ny);

  std::vector<double> k2(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      k2[g.index(i, j)] = kx[i] * kx[i] + ky[j] * ky[j];
  return k2;
}

// Cosine-squared ramp rising from 0 at the absorber's inner edge to 1
// at the grid boundary, on both axes.
std::vector<double> absorber_shape(const Grid2D& g, double width_um) {
  std::vector<double> shape(g.size(), 0.0);
  if (width_um <= 0.0)
    return shape;
  auto ramp = [width_um](double dist_to_edge) {
    if (dist_to_edge >= width_um)
      return 0.0;
    const double s =
        std::cos(0.5 * std::numbers::pi * dist_to_edge / width_um);
    return s * s;
  };
  const double x_lo = g.x0, x_hi = g.x0 + (g.nx - 1) * g.dx;
  const double y_lo = g.y0, y_hi = g.y0 + (g.ny - 1) * g.dy;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double dx_edge = std::min(g.x(i) - x_lo, x_hi - g.x(i));
      const double dy_edge = std::min(g.y(j) - y_lo, y_hi - g.y(j));
      shape[g.index(i, j)] =
          std::max(ramp(dx_edge), ramp(dy_edge));
    }
  return shape;
}

} // namespace

void PropagationConfig::validate() const {
  if (dz_um <= 0.0)
    throw config_error("PropagationConfig: dz must be positive");
  if (absorber_width_um < 0.0)
    throw config_error("PropagationConfig: absorber width must be >= 0");
  if (absorber_strength < 0.0)
    throw config_error("PropagationConfig: absorber strength must be >= 0");
  if (n_ref <= 0.0)
    throw config_error("PropagationConfig: n_ref must be positive");
}

ScalarField propagate_field(
    const std::function<IndexProfile(double z_mm)>& profile_at,
    const Grid2D& grid, const ScalarField& input, double z_extent_mm,
    const PropagationConfig& config) {
  config.validate();
  if (!(input.grid() == grid))
    throw config_error("propagate_field: input grid does not match");
  if (z_extent_mm <= 0.0)
    throw config_error("propagate_field: z extent must be positive");

  const double z_extent_um = z_extent_mm * 1e3;
  const int n_steps =
      std::max(1, static_cast<int>(std::ceil(z_extent_um / config.dz_um)));
  const double h = z_extent_um / n_steps;

  const double k0 =
      2.0 * std::numbers::pi / (input.wavelength_nm() * 1e-3); // 1/um
  const double k_bar = k0 * config.n_ref;

  // Spectral phase of a half diffraction step, with the FFT pair's
  // 1/(nx*ny) normalization folded in.
  const std::vector<double> k2 = k_perp_squared(grid);
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  std::vector<complexd> half_step(grid.size()), full_step(grid.size());
  for (std::size_t k = 0; k < k2.size(); ++k) {
    const double phase = -k2[k] * h / (2.0 * k_bar);
    half_step[k] = std::polar(inv_n, 0.5 * phase);
    full_step[k] = std::polar(inv_n, phase);
  }

  // Per-step amplitude attenuation of the absorbing margin.
  std::vector<double> damping(grid.size(), 1.0);
  if (config.absorber_width_um > 0.0 && config.absorber_strength > 0.0) {
    const std::vector<double> shape =
        absorber_shape(grid, config.absorber_width_um);
    for (std::size_t k = 0; k < damping.size(); ++k)
      damping[k] = std::exp(-config.absorber_strength * shape[k] * h);
  }

  Fft2D fft(grid.nx, grid.ny);
  std::copy(input.values().begin(), input.values().end(), fft.data());

  auto diffract = [&](const std::vector<complexd>& factor) {
    fft.forward();
    complexd* d = fft.data();
    for (std::size_t k = 0; k < factor.size(); ++k)
      d[k] *= factor[k];
    fft.backward();
  };

  diffract(half_step);
  for (int step = 0; step < n_steps; ++step) {
    const double z_mid_mm = (step + 0.5) * h * 1e-3;
    const IndexProfile profile = profile_at(z_mid_mm);
    if (!(profile.grid() == grid))
      throw config_error("propagate_field: profile grid changed mid-run");

    complexd* d = fft.data();
    auto dn = profile.dn();
    const double n_off = profile.n_clad() - config.n_ref;
    for (std::size_t k = 0; k < dn.size(); ++k)
      d[k] *= std::polar(damping[k], k0 * (dn[k] + n_off) * h);

    diffract(step + 1 < n_steps ? full_step : half_step);
  }

  std::vector<complexd> out(fft.data(), fft.data() + grid.size());
  return ScalarField(grid, std::move(out), input.wavelength_nm());
}

PropagationResult propagate(const TaperIndexMap& map, const GuidedMode& input,
                            const PropagationConfig& config) {
  config.validate();
  if (!(input.field.grid() == map.grid()))
    throw config_error("propagate: input mode grid does not match the map");
  if (map.params().reps > 0 &&
      map.params().taper_length_mm * 1e3 / config.dz_um < 100.0)
    throw config_error("propagate: dz too coarse, need >= 100 steps over "
                       "the taper");

  const double p_in = power(input.field);
  if (p_in <= 0.0)
    throw config_error("propagate: input mode has zero power");

  const ScalarField output = propagate_field(
      [&map](double z_mm) { return taper_profile_at(map, z_mm); }, map.grid(),
      input.field, map.z_extent_mm(), config);

  const IndexProfile facet_profile = taper_profile_at(map, map.z_extent_mm());
  const GuidedMode facet_mode =
      solve_fundamental(facet_profile, input.wavelength_nm, config.solver);

  // Power carried by the facet eigenmode (fields in the modal inner
  // product; the facet mode has unit power).
  complexd amp{0.0, 0.0};
  auto m = facet_mode.field.values();
  auto u = output.values();
  for (std::size_t k = 0; k < m.size(); ++k)
    amp += std::conj(m[k]) * u[k];
  amp *= map.grid().cell_area();

  const double transmission = std::norm(amp) / p_in;
  return PropagationResult{output, transmission, 1.0 - transmission};
}

std::vector<std::pair<double, double>> adiabatic_scan(
    const InscriptionParams& params, const MaterialModel& model,
    const std::vector<double>& lengths_mm, const Grid2D& grid,
    double wavelength_nm, const PropagationConfig& config) {
  if (lengths_mm.empty())
    throw config_error("adiabatic_scan: empty length list");
  for (double length : lengths_mm)
    if (length <= 0.0)
      throw config_error("adiabatic_scan: lengths must be positive");

  // The start profile (and thus the input mode) is the same for every
  // length: solve it once.
  InscriptionParams p = params;
  p.validate();
  const IndexProfile start =
      single_pass_profile(p.p0, model, grid);
  const GuidedMode input = solve_fundamental(start, wavelength_nm,
                                             config.solver);

  std::vector<std::pair<double, double>> result;
  result.reserve(lengths_mm.size());
  for (double length : lengths_mm) {
    InscriptionParams pl = p;
    pl.taper_length_mm = length;
    PropagationConfig cl = config;
    cl.dz_um = std::min(config.dz_um, length * 1e3 / 128.0);
    const TaperIndexMap map(pl, model, grid, length);
    const PropagationResult r = propagate(map, input, cl);
    result.emplace_back(length, r.transmission);
  }
  return result;
}

} // namespace tapersim
