#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "polynomial.hpp"
#include "weights.hpp"

namespace milnor {

inline constexpr double kDefaultDependenceTol = 1e-8;
// Relative threshold under which |h(p)| counts as zero (p on K_h).
inline constexpr double kZeroSetTol = 1e-12;

// A point of S_eps. make() radially projects inputs within 1e-6 * eps of the
// sphere and rejects the rest.
struct SpherePoint {
  ComplexVector p;
  double radius = 1.0;

  static SpherePoint make(ComplexVector p, double radius);
  int nvars() const noexcept { return static_cast<int>(p.size()); }
};

// sigma sorted descending; dependent <=> sigma.back() <= tol * max(sigma_1, 1).
struct DependenceReport {
  std::vector<double> sigma;
  bool dependent = false;
  double tol_used = kDefaultDependenceTol;
  // sigma.back() within a factor 10 of the threshold.
  bool indeterminate = false;
};

DependenceReport dependence_from_sigma(std::vector<double> sigma, double tol);

// Throws PointOnZeroSet (reason `reason`) when |h(p)| <= kZeroSetTol * scale.
void require_off_zero_set(const FirstJet& jet, double magnitude, const char* reason);

// v_h(p)_j = i (conj(h_zj / h) - h_zbarj / h)
ComplexVector v_field(const FirstJet& jet);
ComplexVector v_field(const MixedPolynomial& h, const SpherePoint& p);

DependenceReport phi_f_singular(const MixedPolynomial& f, const SpherePoint& p, double tol = kDefaultDependenceTol);

// The pair (f, g) with optional polar weight data. When s is present,
// d_g w_f = s d_f w_g holds exactly and w_f is strictly signed.
class MfpmPair {
 public:
  // Detects a common strictly positive weight, preferring one under which f
  // and g are also radially weighted homogeneous.
  static MfpmPair make(MixedPolynomial f, MixedPolynomial g);
  // Explicit weights; throws when f, g are not polar of these types or the
  // weights are not proportional.
  static MfpmPair with_weights(MixedPolynomial f, MixedPolynomial g, WeightType wf, WeightType wg);
  // No weight data at all.
  static MfpmPair general(MixedPolynomial f, MixedPolynomial g);

  const MixedPolynomial& f() const noexcept { return f_; }
  const MixedPolynomial& g() const noexcept { return g_; }
  const DerivativeTable& f_table() const noexcept { return tf_; }
  const DerivativeTable& g_table() const noexcept { return tg_; }
  int nvars() const noexcept { return f_.nvars(); }

  const std::optional<WeightType>& weight_f() const noexcept { return wf_; }
  const std::optional<WeightType>& weight_g() const noexcept { return wg_; }
  const std::optional<Rational>& s() const noexcept { return s_; }
  double s_value() const;
  // f and g are both radially weighted homogeneous for w_f.
  bool radially_compatible() const noexcept { return radially_compatible_; }
  // Why the polar criterion is unavailable; empty when it is available.
  const std::string& polar_unavailable_reason() const noexcept { return polar_reason_; }
  bool polar_criterion_valid() const noexcept { return polar_reason_.empty(); }

 private:
  MfpmPair(MixedPolynomial f, MixedPolynomial g);
  void finish_weights();

  MixedPolynomial f_, g_;
  DerivativeTable tf_, tg_;
  std::optional<WeightType> wf_, wg_;
  std::optional<Rational> s_;
  bool radially_compatible_ = false;
  std::string polar_reason_ = "missing_weight_data";
};

// s with d_g w_f = s d_f w_g, as a reduced fraction. Throws NotProportional
// or InvalidArgument (zero degree).
Rational compute_s(const WeightType& wf, const WeightType& wg);

// v_f(p), v_g(p) after checking p is off K_fg.
struct PairFields {
  ComplexVector vf, vg;
};
PairFields pair_fields(const MfpmPair& pair, const SpherePoint& p);

// R-dependence of {p, v_f(p), v_g(p)} (columns normalised).
DependenceReport mfpm_singular_general(const MfpmPair& pair, const SpherePoint& p,
                                       double tol = kDefaultDependenceTol);

struct PolarReport {
  DependenceReport dependence;  // C-dependence of {v_f, v_g}
  double residual = 0.0;        // ||v_g - s v_f||
  double relative_residual = 0.0;  // residual / ||v_f||
};

// C-dependence of {v_f(p), v_g(p)}. Throws HypothesisViolation when
// the pair lacks valid polar data.
PolarReport mfpm_singular_polar(const MfpmPair& pair, const SpherePoint& p, double tol = kDefaultDependenceTol);

// h_{t}(p)_j = p_j exp(i w_j t / d)
ComplexVector torus_flow(const WeightType& wt, double t, std::span<const Complex> p);
// d/dt h_t(p) at t = 0.
ComplexVector torus_generator(const WeightType& wt, std::span<const Complex> p);

}  // namespace milnor
