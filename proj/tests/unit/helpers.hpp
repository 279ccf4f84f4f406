#pragma once
// Shared fixtures for the unit tests. Everything here is written against the
// definitions, not against the library's own derivative code.
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "error.hpp"
#include "parser.hpp"
#include "polynomial.hpp"

namespace testing {

using milnor::Complex;
using milnor::ComplexVector;
using milnor::MixedPolynomial;

inline MixedPolynomial poly(const std::string& text, int n) { return milnor::parse_polynomial(text, n); }

// Term-by-term evaluation with std::pow, independent of the library's
// power-table evaluator.
inline Complex naive_eval(const MixedPolynomial& f, const ComplexVector& p) {
  Complex sum = 0.0;
  for (const auto& t : f.terms()) {
    Complex term = t.coeff;
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (int k = 0; k < t.nu[j]; ++k) term *= p[j];
      for (int k = 0; k < t.mu[j]; ++k) term *= std::conj(p[j]);
    }
    sum += term;
  }
  return sum;
}

inline ComplexVector gaussian_point(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  ComplexVector p(n);
  for (auto& z : p) z = Complex(N(rng), N(rng));
  return p;
}

inline ComplexVector sphere_point(std::mt19937_64& rng, int n, double radius = 1.0) {
  ComplexVector p = gaussian_point(rng, n);
  double s = 0.0;
  for (const auto& z : p) s += std::norm(z);
  for (auto& z : p) z *= radius / std::sqrt(s);
  return p;
}

// Random sparse mixed polynomial: `terms` monomials with exponents below
// `max_exp` and Gaussian coefficients.
inline MixedPolynomial random_poly(std::mt19937_64& rng, int n, int terms, int max_exp) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_int_distribution<int> E(0, max_exp);
  std::vector<milnor::MixedMonomial> t;
  for (int k = 0; k < terms; ++k) {
    milnor::MixedMonomial m{Complex(N(rng), N(rng)), std::vector<int>(n), std::vector<int>(n)};
    for (int j = 0; j < n; ++j) {
      m.nu[j] = E(rng);
      m.mu[j] = E(rng);
    }
    t.push_back(std::move(m));
  }
  return MixedPolynomial::from_terms(n, t);
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline milnor::SpherePoint on_sphere(ComplexVector p, double radius = 1.0) {
  return milnor::SpherePoint::make(std::move(p), radius);
}

}  // namespace testing
