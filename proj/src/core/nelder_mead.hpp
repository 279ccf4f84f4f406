#pragma once

#include <functional>
#include <span>
#include <vector>

namespace milnor {

struct NelderMeadOptions {
  int max_evals = 4000;
  double initial_step = 0.1;
  // Stop when the simplex value spread and diameter both fall below these.
  double ftol = 1e-16;
  double xtol = 1e-14;
  // Stop as soon as the best value is <= target.
  double target = 0.0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

// Derivative-free simplex descent with dimension-adaptive coefficients.
// +inf objective values are allowed and act as a barrier.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> x0, const NelderMeadOptions& options);

}  // namespace milnor
