#ifndef TAPERSIM_NELDER_MEAD_HPP
#define TAPERSIM_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace tapersim {

struct NelderMeadOptions {
  int max_evaluations = 400;
  double f_tolerance = 1e-10;   // simplex value spread
  double x_tolerance = 1e-9;    // simplex coordinate spread
  double f_target = -1.0;       // stop early once best <= target (if >= 0)
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false; // simplex collapsed or target reached in budget
};

/// Classic downhill simplex over box-constrained coordinates
/// (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Points are
/// clamped to the bounds before each evaluation; fully deterministic
/// for a given start point and step vector.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const std::vector<double>& step,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const NelderMeadOptions& options = {});

} // namespace tapersim

#endif
