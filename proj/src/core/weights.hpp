#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace milnor {

enum class WeightKind { Radial, Polar };
const char* weight_kind_name(WeightKind kind);

// Integer weight vector with the common degree of every term. The degree may
// be zero or negative; degree_positive() says whether it is a degree in the
// strict sense of the definitions.
struct WeightType {
  std::vector<std::int64_t> w;
  std::int64_t d = 0;
  WeightKind kind = WeightKind::Polar;

  bool degree_positive() const noexcept { return d > 0; }
};

enum class WeightSign { StrictlyPositive, StrictlyNegative, Mixed };
WeightSign weight_sign(std::span<const std::int64_t> w);
const char* weight_sign_name(WeightSign sign);

// Degree of one monomial: sum w_j (nu_j + mu_j) or sum w_j (nu_j - mu_j).
std::int64_t monomial_degree(const MixedMonomial& m, std::span<const std::int64_t> w, WeightKind kind);

struct WeightDegree {
  std::int64_t d;
  bool positive;
};

// Common degree of all terms under w, or nothing if the terms disagree.
// Throws ZeroPolynomial.
std::optional<WeightDegree> check_weighted(const MixedPolynomial& f, std::span<const std::int64_t> w,
                                           WeightKind kind);

// Lattice basis of all integer w under which every term of f has the same
// degree, each primitive with its first nonzero entry positive.
std::vector<WeightType> detect_weights(const MixedPolynomial& f, WeightKind kind);

// |f(e^{i w_1 t} p_1, ..., e^{i w_n t} p_n) - e^{i d t} f(p)| without any
// consistency check between (w, d) and f.
double polar_action_residual(const MixedPolynomial& f, std::span<const std::int64_t> w, std::int64_t d,
                             std::span<const Complex> p, double t);

// Same residual, after checking that f is polar weighted of type wt.
double verify_polar_action(const MixedPolynomial& f, const WeightType& wt, std::span<const Complex> p, double t);

// Smallest strictly positive primitive weight under which every polynomial in
// `polys` is polar weighted homogeneous (and radially too, when
// `also_radial`). Each polynomial may have its own degree.
std::optional<std::vector<std::int64_t>> common_positive_weight(std::span<const MixedPolynomial> polys,
                                                                bool also_radial);

std::string weights_to_string(std::span<const std::int64_t> w);

}  // namespace milnor
