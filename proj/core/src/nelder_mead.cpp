#include "tapersim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

#include "tapersim/errors.hpp"

namespace tapersim {

namespace {

void clamp(std::vector<double>& x, const std::vector<double>& lo,
           const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::min(hi[i], std::max(lo[i], x[i]));
}

} // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const std::vector<double>& step,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0 || step.size() != n || lower.size() != n || upper.size() != n)
    throw config_error("nelder_mead: inconsistent dimensions");

  NelderMeadResult result;
  auto eval = [&](std::vector<double>& x) {
    clamp(x, lower, upper);
    ++result.evaluations;
    return objective(x);
  };

  // Initial simplex: start plus one step along each axis.
  std::vector<std::vector<double>> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  clamp(xs[0], lower, upper);
  fs[0] = eval(xs[0]);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i + 1][i] += step[i];
    fs[i + 1] = eval(xs[i + 1]);
  }

  auto order = [&]() {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&fs](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> xs2(n + 1);
    std::vector<double> fs2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  while (true) {
    order();

    if (options.f_target >= 0.0 && fs[0] <= options.f_target) {
      result.converged = true;
      break;
    }
    double x_spread = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      x_spread = std::max(x_spread, std::abs(xs[n][i] - xs[0][i]));
    if (std::abs(fs[n] - fs[0]) <= options.f_tolerance &&
        x_spread <= options.x_tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations)
      break;

    // Centroid of all but the worst vertex.
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < n; ++d)
        centroid[d] += xs[i][d];
    }
    for (double& c : centroid)
      c /= static_cast<double>(n);

    auto along = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d)
        x[d] = centroid[d] + coeff * (centroid[d] - xs[n][d]);
      return x;
    };

    std::vector<double> xr = along(1.0);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      std::vector<double> xe = along(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[n] = std::move(xe);
        fs[n] = fe;
      } else {
        xs[n] = std::move(xr);
        fs[n] = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      xs[n] = std::move(xr);
      fs[n] = fr;
      continue;
    }

    // Contract (outside if the reflection helped at all, else inside).
    std::vector<double> xc = along(fr < fs[n] ? 0.5 : -0.5);
    const double fc = eval(xc);
    if (fc < std::min(fr, fs[n])) {
      xs[n] = std::move(xc);
      fs[n] = fc;
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d)
        xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
      fs[i] = eval(xs[i]);
    }
  }

  order();
  result.x = xs[0];
  result.f = fs[0];
  return result;
}

} // namespace tapersim
