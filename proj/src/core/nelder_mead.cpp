#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace milnor {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(std::max<std::size_t>(n, 1));
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn > 0.0 ? 1.0 - 1.0 / dn : 0.5;

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evals;
    const double v = objective(x);
    return std::isnan(v) ? INFINITY : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
  };

  while (result.evals < options.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<std::vector<double>> s2(n + 1);
      std::vector<double> v2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        s2[i] = simplex[order[i]];
        v2[i] = values[order[i]];
      }
      simplex.swap(s2);
      values.swap(v2);
    }
    if (values[0] <= options.target) break;
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, std::abs(simplex[i][j] - simplex[0][j]));
    const double spread = values[n] - values[0];
    if (diam <= options.xtol && (spread <= options.ftol || !std::isfinite(spread))) break;
    if (diam <= options.xtol * 1e-3) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / dn;

    const auto& worst = simplex[n];
    point_along(-alpha, worst, trial);
    const double fr = eval(trial);
    if (fr < values[0]) {
      point_along(-alpha * beta, worst, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[n] = trial2;
        values[n] = fe;
      } else {
        simplex[n] = trial;
        values[n] = fr;
      }
      continue;
    }
    if (fr < values[n - 1]) {
      simplex[n] = trial;
      values[n] = fr;
      continue;
    }
    const bool outside = fr < values[n];
    point_along(outside ? -alpha * gamma : gamma, worst, trial2);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[n])) {
      simplex[n] = trial2;
      values[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + delta * (simplex[i][j] - simplex[0][j]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace milnor
