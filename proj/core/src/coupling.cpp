#include "tapersim/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "tapersim/errors.hpp"
#include "tapersim/field_io.hpp"

namespace tapersim {

namespace {

constexpr double kInvE2 = 0.1353352832366127; // exp(-2)

// Outermost threshold crossings of a 1D cut, linearly interpolated.
// Returns the separation; throws if the cut does not drop below the
// threshold inside the grid on both sides.
double width_of_cut(const std::vector<double>& cut, double coord0, double step,
                    double threshold) {
  const int n = static_cast<int>(cut.size());
  int lo = -1, hi = -1;
  for (int k = 0; k < n; ++k)
    if (cut[k] >= threshold) {
      lo = k;
      break;
    }
  for (int k = n - 1; k >= 0; --k)
    if (cut[k] >= threshold) {
      hi = k;
      break;
    }
  if (lo < 0 || hi < 0)
    throw physics_error("mfd_1e2: cut never reaches the 1/e^2 level");
  if (lo == 0 || hi == n - 1)
    throw physics_error("mfd_1e2: 1/e^2 crossing outside the grid "
                        "(mode not contained)");
  const double t_lo =
      (threshold - cut[lo - 1]) / (cut[lo] - cut[lo - 1]);
  const double x_lo = coord0 + (lo - 1 + t_lo) * step;
  const double t_hi = (threshold - cut[hi + 1]) / (cut[hi] - cut[hi + 1]);
  const double x_hi = coord0 + (hi + 1 - t_hi) * step;
  return x_hi - x_lo;
}

std::size_t peak_index(const IntensityProfile& intensity) {
  auto vals = intensity.values();
  const double peak = *std::max_element(vals.begin(), vals.end());
  if (peak <= 0.0)
    throw physics_error("mfd_1e2: intensity is identically zero");

  // Ties broken toward the centroid.
  const auto [cx, cy] = centroid_of(intensity);
  const Grid2D& g = intensity.grid();
  std::size_t best = 0;
  double best_dist = -1.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (vals[k] != peak)
        continue;
      const double dx = g.x(i) - cx;
      const double dy = g.y(j) - cy;
      const double d = dx * dx + dy * dy;
      if (best_dist < 0.0 || d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
  return best;
}

} // namespace

double FiberSpec::mfd_at(double wavelength_nm) const {
  return mfd_at_reference_um *
         std::pow(wavelength_nm / reference_wavelength_nm, scaling_exponent);
}

std::pair<double, double> centroid_of(const IntensityProfile& intensity) {
  const Grid2D& g = intensity.grid();
  double sum = 0.0, sx = 0.0, sy = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = intensity.at(i, j);
      sum += v;
      sx += v * g.x(i);
      sy += v * g.y(j);
    }
  if (sum <= 0.0)
    throw physics_error("centroid_of: intensity is identically zero");
  return {sx / sum, sy / sum};
}

double mfd_1e2(const IntensityProfile& intensity, Axis axis) {
  const Grid2D& g = intensity.grid();
  const std::size_t kp = peak_index(intensity);
  const int ip = static_cast<int>(kp % g.nx);
  const int jp = static_cast<int>(kp / g.nx);
  const double peak = intensity.values()[kp];
  const double threshold = peak * kInvE2;

  std::vector<double> cut;
  if (axis == Axis::H) {
    cut.resize(g.nx);
    for (int i = 0; i < g.nx; ++i)
      cut[i] = intensity.at(i, jp);
    return width_of_cut(cut, g.x0, g.dx, threshold);
  }
  cut.resize(g.ny);
  for (int j = 0; j < g.ny; ++j)
    cut[j] = intensity.at(ip, j);
  return width_of_cut(cut, g.y0, g.dy, threshold);
}

MfdReport mfd_report(const IntensityProfile& intensity) {
  MfdReport r;
  r.mfd_h_um = mfd_1e2(intensity, Axis::H);
  r.mfd_v_um = mfd_1e2(intensity, Axis::V);
  r.area_um2 = M_PI * r.mfd_h_um * r.mfd_v_um / 4.0;
  r.centroid_um = centroid_of(intensity);
  return r;
}

namespace {

// Deterministic symmetric choice of the common grid: the one resolving
// more samples wins, ties broken on geometry.
const Grid2D& common_grid(const Grid2D& a, const Grid2D& b) {
  if (a == b)
    return a;
  auto key = [](const Grid2D& g) {
    return std::make_tuple(g.size(), -g.dx, -g.dy, g.x0, g.y0, g.nx);
  };
  return key(a) >= key(b) ? a : b;
}

} // namespace

double overlap_efficiency(const ScalarField& a, const ScalarField& b) {
  const Grid2D& target = common_grid(a.grid(), b.grid());
  const ScalarField& ra = a.grid() == target ? a : resample(a, target);
  const ScalarField& rb = b.grid() == target ? b : resample(b, target);

  const double pa = power(ra);
  const double pb = power(rb);
  if (pa <= 0.0 || pb <= 0.0)
    throw config_error("overlap_efficiency: field has zero power");

  complexd inner{0.0, 0.0};
  auto va = ra.values();
  auto vb = rb.values();
  for (std::size_t k = 0; k < va.size(); ++k)
    inner += std::conj(va[k]) * vb[k];
  inner *= target.cell_area();

  double eta = std::norm(inner) / (pa * pb);
  if (eta > 1.0)
    eta = 1.0; // Cauchy-Schwarz round-off only
  return eta;
}

ScalarField fiber_mode(const FiberSpec& spec, double wavelength_nm,
                       const Grid2D& grid) {
  if (wavelength_nm < 600.0 || wavelength_nm > 1000.0)
    throw config_error("fiber_mode: wavelength outside validated 600-1000 nm");
  if (spec.mfd_at_reference_um <= 0.0)
    throw config_error("fiber_mode: fiber MFD must be positive");
  const double w = spec.mfd_at(wavelength_nm) / 2.0;
  return gaussian_field(grid, w, w, {0.0, 0.0}, wavelength_nm);
}

CouplingReport coupling_report(const ScalarField& mode_field,
                               const FiberSpec& spec) {
  const double wavelength_nm = mode_field.wavelength_nm();
  if (wavelength_nm <= 0.0)
    throw config_error("coupling_report: field wavelength not set");
  if (wavelength_nm < 600.0 || wavelength_nm > 1000.0)
    throw config_error(
        "coupling_report: wavelength outside validated 600-1000 nm");

  const IntensityProfile intensity = intensity_of(mode_field);
  CouplingReport report;
  report.wavelength_nm = wavelength_nm;
  report.mfd = mfd_report(intensity);
  report.fiber_mfd_um = spec.mfd_at(wavelength_nm);

  // Optimal transverse alignment: fiber centered on the mode centroid.
  const double w = report.fiber_mfd_um / 2.0;
  const ScalarField fiber = gaussian_field(mode_field.grid(), w, w,
                                           report.mfd.centroid_um,
                                           wavelength_nm);
  report.eta = overlap_efficiency(mode_field, fiber);
  return report;
}

IntensityProfile load_intensity_image(const std::string& path,
                                      double pixel_pitch_um) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw config_error("load_intensity_image: cannot open '" + path + "'");

  IntensityProfile raw = [&]() {
    char magic[2] = {0, 0};
    is.read(magic, 2);
    is.seekg(0);
    if (magic[0] == 'P' && magic[1] == '5')
      return read_pgm(is, pixel_pitch_um);
    return read_intensity_csv(is);
  }();

  // Background: median over the outer 5% margin frame.
  const Grid2D& g = raw.grid();
  const int margin = std::max(1, static_cast<int>(
                                     std::lround(0.05 * std::min(g.nx, g.ny))));
  std::vector<double> frame;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (i < margin || i >= g.nx - margin || j < margin || j >= g.ny - margin)
        frame.push_back(raw.at(i, j));
  std::nth_element(frame.begin(), frame.begin() + frame.size() / 2,
                   frame.end());
  const double background = frame[frame.size() / 2];

  std::vector<double> values(raw.values().begin(), raw.values().end());
  for (auto& v : values)
    v = std::max(0.0, v - background);
  return IntensityProfile(g, std::move(values));
}

} // namespace tapersim
