#include "criteria.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "linalg.hpp"

namespace milnor {
namespace {

void put_column(Eigen::MatrixXd& m, Eigen::Index col, std::span<const Complex> v) {
  const double nv = norm(v);
  const double scale = nv > 0.0 ? 1.0 / nv : 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    m(2 * static_cast<Eigen::Index>(j), col) = v[j].real() * scale;
    m(2 * static_cast<Eigen::Index>(j) + 1, col) = v[j].imag() * scale;
  }
}

std::vector<double> padded_sigma(std::vector<double> sigma, std::size_t count) {
  sigma.resize(std::max(sigma.size(), count), 0.0);
  return sigma;
}

}  // namespace

SpherePoint SpherePoint::make(ComplexVector p, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::InvalidArgument, "radius must be positive", "bad_radius");
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "empty point");
  const double r = norm(p);
  if (!(std::abs(r - radius) <= 1e-6 * radius))
    throw Error(ErrorCode::InvalidArgument,
                "point is not on the sphere of radius " + std::to_string(radius) + " (norm " + std::to_string(r) + ")",
                "point_off_sphere");
  for (auto& c : p) c *= radius / r;
  return SpherePoint{std::move(p), radius};
}

DependenceReport dependence_from_sigma(std::vector<double> sigma, double tol) {
  DependenceReport rep;
  rep.tol_used = tol;
  const double threshold = tol * std::max(sigma.empty() ? 0.0 : sigma.front(), 1.0);
  const double last = sigma.empty() ? 0.0 : sigma.back();
  rep.dependent = last <= threshold;
  rep.indeterminate = last >= threshold / 10.0 && last <= threshold * 10.0;
  rep.sigma = std::move(sigma);
  return rep;
}

void require_off_zero_set(const FirstJet& jet, double magnitude, const char* reason) {
  if (!(std::abs(jet.value) > kZeroSetTol * magnitude) || magnitude == 0.0)
    throw Error(ErrorCode::PointOnZeroSet, std::string("point on ") + (reason + 9), reason);
}

ComplexVector v_field(const FirstJet& jet) {
  const Complex i(0.0, 1.0);
  ComplexVector v(jet.dz.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = i * (std::conj(jet.dz[j] / jet.value) - jet.dzbar[j] / jet.value);
  return v;
}

ComplexVector v_field(const MixedPolynomial& h, const SpherePoint& p) {
  const DerivativeTable table(h);
  const FirstJet jet = table.first(p.p);
  require_off_zero_set(jet, h.magnitude(p.p), "point_on_K_h");
  return v_field(jet);
}

DependenceReport phi_f_singular(const MixedPolynomial& f, const SpherePoint& p, double tol) {
  const ComplexVector vf = v_field(f, p);  // throws on K
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(p.p.size());
  Eigen::MatrixXd m(rows, 2);
  put_column(m, 0, p.p);
  put_column(m, 1, vf);
  return dependence_from_sigma(padded_sigma(singular_values(m), 2), tol);
}

MfpmPair::MfpmPair(MixedPolynomial f, MixedPolynomial g)
    : f_(std::move(f)), g_(std::move(g)), tf_(f_, true), tg_(g_, true) {
  if (f_.nvars() != g_.nvars())
    throw Error(ErrorCode::DimensionMismatch, "f and g have different variable counts", "mismatched_n");
  if (f_.is_zero() || g_.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "f and g must be nonzero");
}

MfpmPair MfpmPair::general(MixedPolynomial f, MixedPolynomial g) { return MfpmPair(std::move(f), std::move(g)); }

MfpmPair MfpmPair::make(MixedPolynomial f, MixedPolynomial g) {
  MfpmPair pair(std::move(f), std::move(g));
  const MixedPolynomial both[] = {pair.f_, pair.g_};
  auto w = common_positive_weight(both, true);
  if (!w) w = common_positive_weight(both, false);
  if (w) {
    pair.wf_ = WeightType{*w, monomial_degree(pair.f_.terms().front(), *w, WeightKind::Polar), WeightKind::Polar};
    pair.wg_ = WeightType{*w, monomial_degree(pair.g_.terms().front(), *w, WeightKind::Polar), WeightKind::Polar};
  }
  pair.finish_weights();
  return pair;
}

MfpmPair MfpmPair::with_weights(MixedPolynomial f, MixedPolynomial g, WeightType wf, WeightType wg) {
  MfpmPair pair(std::move(f), std::move(g));
  wf.kind = wg.kind = WeightKind::Polar;
  const auto df = check_weighted(pair.f_, wf.w, WeightKind::Polar);
  const auto dg = check_weighted(pair.g_, wg.w, WeightKind::Polar);
  if (!df || df->d != wf.d)
    throw Error(ErrorCode::HypothesisViolation, "f is not polar weighted of the given type", "f_not_polar_weighted");
  if (!dg || dg->d != wg.d)
    throw Error(ErrorCode::HypothesisViolation, "g is not polar weighted of the given type", "g_not_polar_weighted");
  pair.wf_ = std::move(wf);
  pair.wg_ = std::move(wg);
  pair.finish_weights();
  return pair;
}

void MfpmPair::finish_weights() {
  s_.reset();
  radially_compatible_ = false;
  if (!wf_ || !wg_) {
    polar_reason_ = "missing_weight_data";
    return;
  }
  radially_compatible_ = check_weighted(f_, wf_->w, WeightKind::Radial).has_value() &&
                         check_weighted(g_, wf_->w, WeightKind::Radial).has_value();
  if (wf_->d == 0 || wg_->d == 0) {
    polar_reason_ = "zero_polar_degree";
    return;
  }
  s_ = compute_s(*wf_, *wg_);
  if (weight_sign(wf_->w) == WeightSign::Mixed) {
    polar_reason_ = "w_f_not_strictly_signed";
    return;
  }
  polar_reason_ = radially_compatible_ ? "" : "not_radially_compatible";
}

double MfpmPair::s_value() const {
  if (!s_) throw Error(ErrorCode::HypothesisViolation, "pair has no scalar s", "missing_weight_data");
  return static_cast<double>(*s_);
}

Rational compute_s(const WeightType& wf, const WeightType& wg) {
  if (wf.w.size() != wg.w.size()) throw Error(ErrorCode::DimensionMismatch, "weight lengths differ");
  if (wf.d == 0 || wg.d == 0)
    throw Error(ErrorCode::InvalidArgument, "polar degree must be nonzero to define s", "zero_degree");
  std::optional<Rational> s;
  for (std::size_t j = 0; j < wf.w.size(); ++j) {
    const BigInt num = BigInt(wg.d) * wf.w[j];
    const BigInt den = BigInt(wf.d) * wg.w[j];
    if (den == 0) {
      if (num == 0) continue;
      throw Error(ErrorCode::NotProportional, "w_g vanishes where w_f does not", "not_proportional");
    }
    const Rational r(num, den);
    if (s && *s != r) throw Error(ErrorCode::NotProportional, "weights are not proportional", "not_proportional");
    s = r;
  }
  if (!s) throw Error(ErrorCode::InvalidArgument, "zero weight vectors");
  return *s;
}

PairFields pair_fields(const MfpmPair& pair, const SpherePoint& p) {
  if (p.nvars() != pair.nvars()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from n");
  const FirstJet jf = pair.f_table().first(p.p);
  require_off_zero_set(jf, pair.f().magnitude(p.p), "point_on_K_f");
  const FirstJet jg = pair.g_table().first(p.p);
  require_off_zero_set(jg, pair.g().magnitude(p.p), "point_on_K_g");
  return PairFields{v_field(jf), v_field(jg)};
}

DependenceReport mfpm_singular_general(const MfpmPair& pair, const SpherePoint& p, double tol) {
  const PairFields v = pair_fields(pair, p);
  Eigen::MatrixXd m(2 * static_cast<Eigen::Index>(p.p.size()), 3);
  put_column(m, 0, p.p);
  put_column(m, 1, v.vf);
  put_column(m, 2, v.vg);
  return dependence_from_sigma(padded_sigma(singular_values(m), 3), tol);
}

PolarReport mfpm_singular_polar(const MfpmPair& pair, const SpherePoint& p, double tol) {
  if (!pair.polar_criterion_valid())
    throw Error(ErrorCode::HypothesisViolation,
                "complex-dependence criterion unavailable: " + pair.polar_unavailable_reason(),
                pair.polar_unavailable_reason());
  const PairFields v = pair_fields(pair, p);
  const Eigen::Index n = static_cast<Eigen::Index>(p.p.size());
  Eigen::MatrixXcd m(n, 2);
  const double nf = norm(v.vf), ng = norm(v.vg);
  for (Eigen::Index j = 0; j < n; ++j) {
    m(j, 0) = nf > 0.0 ? v.vf[j] / nf : Complex(0.0);
    m(j, 1) = ng > 0.0 ? v.vg[j] / ng : Complex(0.0);
  }
  PolarReport rep;
  rep.dependence = dependence_from_sigma(padded_sigma(singular_values(m), 2), tol);
  const double s = pair.s_value();
  ComplexVector diff(v.vg.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = v.vg[j] - s * v.vf[j];
  rep.residual = norm(diff);
  rep.relative_residual = nf > 0.0 ? rep.residual / nf : rep.residual;
  return rep;
}

ComplexVector torus_flow(const WeightType& wt, double t, std::span<const Complex> p) {
  if (wt.d == 0) throw Error(ErrorCode::InvalidArgument, "torus flow needs a nonzero degree", "zero_degree");
  if (wt.w.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "weight length differs from point");
  ComplexVector q(p.begin(), p.end());
  for (std::size_t j = 0; j < q.size(); ++j)
    q[j] *= std::polar(1.0, static_cast<double>(wt.w[j]) * t / static_cast<double>(wt.d));
  return q;
}

ComplexVector torus_generator(const WeightType& wt, std::span<const Complex> p) {
  if (wt.d == 0) throw Error(ErrorCode::InvalidArgument, "torus flow needs a nonzero degree", "zero_degree");
  ComplexVector v(p.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = Complex(0.0, static_cast<double>(wt.w[j]) / static_cast<double>(wt.d)) * p[j];
  return v;
}

}  // namespace milnor
