#include "tapersim/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "tapersim/coupling.hpp"
#include "tapersim/errors.hpp"
#include "tapersim/transforms.hpp"

namespace tapersim {

namespace {

// A v = laplacian(v) + q v with zero ghost values outside the grid.
void apply_operator(const Grid2D& g, const std::vector<double>& q,
                    const std::vector<double>& v, std::vector<double>& out) {
  const double ix2 = 1.0 / (g.dx * g.dx);
  const double iy2 = 1.0 / (g.dy * g.dy);
  const double diag = -2.0 * (ix2 + iy2);
  for (int j = 0; j < g.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = row + i;
      double acc = (diag + q[k]) * v[k];
      if (i > 0) acc += ix2 * v[k - 1];
      if (i < g.nx - 1) acc += ix2 * v[k + 1];
      if (j > 0) acc += iy2 * v[k - g.nx];
      if (j < g.ny - 1) acc += iy2 * v[k + g.nx];
      out[k] = acc;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += a[k] * b[k];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Exact inverse of (shift - q_clad) I - laplacian in the DST basis;
// used as the CG preconditioner for (shift I - A).
class DirichletHelmholtzInverse {
public:
  DirichletHelmholtzInverse(const Grid2D& g, double shift_minus_qclad)
      : g_(g), dst_(g.nx, g.ny), inv_eig_(g.size()) {
    const double scale = 1.0 / (4.0 * (g.nx + 1.0) * (g.ny + 1.0));
    std::vector<double> lx(g.nx), ly(g.ny);
    for (int i = 0; i < g.nx; ++i)
      lx[i] = Dst2D::laplacian_eigenvalue(i, g.nx, g.dx);
    for (int j = 0; j < g.ny; ++j)
      ly[j] = Dst2D::laplacian_eigenvalue(j, g.ny, g.dy);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        inv_eig_[g.index(i, j)] =
            scale / (shift_minus_qclad - lx[i] - ly[j]);
  }

  void apply(const std::vector<double>& in, std::vector<double>& out) {
    std::copy(in.begin(), in.end(), dst_.data());
    dst_.apply();
    double* d = dst_.data();
    for (std::size_t k = 0; k < inv_eig_.size(); ++k)
      d[k] *= inv_eig_[k];
    dst_.apply();
    std::copy(d, d + inv_eig_.size(), out.begin());
  }

private:
  Grid2D g_;
  Dst2D dst_;
  std::vector<double> inv_eig_;
};

// Preconditioned CG on (shift I - A) x = b. The systems get nearly
// singular as the shift closes in on the eigenvalue; the error this
// leaves is aligned with the eigenvector, which inverse iteration
// wants anyway, so a capped iteration count is fine.
void solve_shifted(const Grid2D& g, const std::vector<double>& q, double shift,
                   DirichletHelmholtzInverse& precond,
                   const std::vector<double>& b, std::vector<double>& x,
                   double rel_tol, int max_iters) {
  const std::size_t n = b.size();
  std::vector<double> r = b; // x starts at zero
  std::vector<double> z(n), p(n), ap(n);
  std::fill(x.begin(), x.end(), 0.0);

  precond.apply(r, z);
  p = z;
  double rz = dot(r, z);
  const double b_norm = norm2(b);
  if (b_norm == 0.0)
    return;

  for (int it = 0; it < max_iters; ++it) {
    apply_operator(g, q, p, ap);
    for (std::size_t k = 0; k < n; ++k)
      ap[k] = shift * p[k] - ap[k];
    const double p_ap = dot(p, ap);
    if (p_ap <= 0.0)
      break; // lost positive definiteness to round-off; bail with x so far
    const double alpha = rz / p_ap;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    if (norm2(r) <= rel_tol * b_norm)
      break;
    precond.apply(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k)
      p[k] = z[k] + beta * p[k];
  }
}

} // namespace

void SolverConfig::validate() const {
  if (tolerance <= 0.0)
    throw config_error("SolverConfig: tolerance must be positive");
  if (max_iterations <= 0)
    throw config_error("SolverConfig: max_iterations must be positive");
}

GuidedMode solve_fundamental(const IndexProfile& profile, double wavelength_nm,
                             const SolverConfig& config) {
  config.validate();
  if (wavelength_nm <= 0.0)
    throw config_error("solve_fundamental: wavelength must be positive");

  const Grid2D& g = profile.grid();
  const double max_dn = profile.max_dn();
  if (max_dn <= 0.0)
    throw cutoff_error("solve_fundamental: profile has no index contrast");

  const double k0 = 2.0 * std::numbers::pi / (wavelength_nm * 1e-3); // 1/um
  const double n_clad = profile.n_clad();
  const double q_clad = k0 * k0 * n_clad * n_clad;
  const double shift0 = k0 * k0 * (n_clad + max_dn) * (n_clad + max_dn);

  std::vector<double> q(g.size());
  auto dn = profile.dn();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double n = n_clad + dn[k];
    q[k] = k0 * k0 * n * n;
  }

  DirichletHelmholtzInverse precond(g, shift0 - q_clad);

  // Start from the index profile itself: deterministic and already
  // close to the fundamental's symmetry.
  std::vector<double> v(dn.begin(), dn.end());
  {
    const double nv = norm2(v);
    for (auto& x : v)
      x /= nv;
  }

  std::vector<double> av(g.size()), w(g.size());
  double shift = shift0;
  double rho = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int it = 0; it < config.max_iterations; ++it) {
    solve_shifted(g, q, shift, precond, v, w, 1e-12, 300);
    const double wn = norm2(w);
    if (!(wn > 0.0) || !std::isfinite(wn))
      throw convergence_error("solve_fundamental: inverse iteration broke down",
                              residual);
    for (std::size_t k = 0; k < w.size(); ++k)
      v[k] = w[k] / wn;

    apply_operator(g, q, v, av);
    rho = dot(v, av); // Rayleigh quotient, approaches beta^2 from below
    double rss = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double r = av[k] - rho * v[k];
      rss += r * r;
    }
    residual = std::sqrt(rss);
    if (residual <= config.tolerance) {
      converged = true;
      break;
    }
    // Tighten the shift toward the eigenvalue while provably staying
    // above it (|rho - beta^2| <= residual for unit v).
    shift = std::min(shift0, rho + 3.0 * residual);
  }

  if (!converged)
    throw convergence_error("solve_fundamental: no convergence within budget",
                            residual);

  const double beta_sq = rho;
  if (beta_sq <= q_clad)
    throw cutoff_error("solve_fundamental: mode below cutoff (beta <= k0 n_clad)");

  const double n_eff = std::sqrt(beta_sq) / k0;

  // Positive peak, unit power.
  std::size_t peak = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (std::abs(v[k]) > std::abs(v[peak]))
      peak = k;
  double scale = 1.0 / (norm2(v) * std::sqrt(g.cell_area()));
  if (v[peak] < 0.0)
    scale = -scale;

  std::vector<complexd> values(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    values[k] = complexd{v[k] * scale, 0.0};

  GuidedMode mode{ScalarField(g, std::move(values), wavelength_nm), n_eff,
                  wavelength_nm, residual};

  if (config.check_containment) {
    const MfdReport r = mfd_report(intensity_of(mode.field));
    if (g.extent_x() < 4.0 * r.mfd_h_um || g.extent_y() < 4.0 * r.mfd_v_um)
      throw physics_error("solve_fundamental: grid extent below 4x the mode "
                          "field diameter");
  }
  return mode;
}

double mode_residual(const GuidedMode& mode, const IndexProfile& profile) {
  if (!(mode.field.grid() == profile.grid()))
    throw config_error("mode_residual: mode and profile grids differ");

  const Grid2D& g = profile.grid();
  const double k0 = 2.0 * std::numbers::pi / (mode.wavelength_nm * 1e-3);
  const double n_clad = profile.n_clad();
  const double beta_sq = (mode.n_eff * k0) * (mode.n_eff * k0);

  std::vector<double> q(g.size());
  auto dn = profile.dn();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double n = n_clad + dn[k];
    q[k] = k0 * k0 * n * n;
  }

  // The mode field is real by convention; check the real part.
  std::vector<double> v(g.size()), av(g.size());
  auto vals = mode.field.values();
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = vals[k].real();
  apply_operator(g, q, v, av);

  double rss = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double r = av[k] - beta_sq * v[k];
    rss += r * r;
  }
  const double vn = norm2(v);
  if (vn == 0.0)
    throw config_error("mode_residual: zero mode field");
  return std::sqrt(rss) / vn;
}

} // namespace tapersim
