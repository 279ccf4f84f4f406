#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "error.hpp"

namespace milnor::oracle {
namespace {

Complex value_off_zero_set(const MixedPolynomial& h, const ComplexVector& z) {
  const Complex v = h.evaluate(z);
  if (std::abs(v) <= kZeroSetTol * std::max(h.magnitude(z), 1e-300))
    throw Error(ErrorCode::PointOnZeroSet, "finite-difference stencil node lies on K_fg", "stencil_hits_K");
  return v;
}

double phase_ratio(Complex a, Complex b) { return std::arg(a / b); }

Eigen::MatrixXd random_orthogonal(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
}

}  // namespace

SphereChart::SphereChart(SpherePoint anchor, std::optional<std::uint64_t> seed) : anchor_(std::move(anchor)) {
  const Eigen::VectorXd radial = to_eigen(realify(anchor_.p)) / anchor_.radius;
  frame_ = orthonormal_complement(radial);
  if (seed && frame_.cols() > 0) frame_ = frame_ * random_orthogonal(frame_.cols(), *seed);
}

ComplexVector SphereChart::retract(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y = to_eigen(realify(anchor_.p)) + frame_ * x;
  const Eigen::VectorXd scaled = y * (anchor_.radius / y.norm());
  return complexify(std::span<const double>(scaled.data(), static_cast<std::size_t>(scaled.size())));
}

Eigen::MatrixXd jacobian_fd(const MixedPolynomial& f, const MixedPolynomial& g, const SphereChart& chart,
                            double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive", "bad_step");
  value_off_zero_set(f, chart.anchor().p);
  value_off_zero_set(g, chart.anchor().p);
  const int m = chart.dim();
  Eigen::MatrixXd J(2, m);
  for (int i = 0; i < m; ++i) {
    double h = step;
    for (;;) {
      if (h < 1e-12) throw Error(ErrorCode::Numeric, "finite-difference step underflow", "step_underflow");
      Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
      e[i] = h;
      const ComplexVector a = chart.retract(e);
      const ComplexVector b = chart.retract(-e);
      const double rf = phase_ratio(value_off_zero_set(f, a), value_off_zero_set(f, b));
      const double rg = phase_ratio(value_off_zero_set(g, a), value_off_zero_set(g, b));
      if (std::max(std::abs(rf), std::abs(rg)) > std::numbers::pi / 4) {
        h *= 0.5;
        continue;
      }
      J(0, i) = rf / (2 * h);
      J(1, i) = rg / (2 * h);
      break;
    }
  }
  return J;
}

JacobianVerdict jacobian_verdict(const MixedPolynomial& f, const MixedPolynomial& g, const SphereChart& chart,
                                 double step) {
  JacobianVerdict v;
  // Shrink the step to the length scale on which the phases vary, so the
  // truncation error stays relative to the entries.
  Eigen::MatrixXd J = jacobian_fd(f, g, chart, step);
  const double scale = J.size() ? J.cwiseAbs().maxCoeff() / std::sqrt(static_cast<double>(chart.dim())) : 0.0;
  v.step = step;
  if (scale > 1.0) {
    v.step = step / scale;
    J = jacobian_fd(f, g, chart, v.step);
  }
  v.rank = rank_with_gap(J, kJacobianRankTol);
  v.deficient = v.rank.rank <= 1;
  return v;
}

Eigen::VectorXd arg_gradient_fd(const MixedPolynomial& h, const ComplexVector& p, double step) {
  const std::vector<double> y = realify(p);
  const double scale = std::max(1.0, norm(p));
  const double d = step * scale;
  Eigen::VectorXd grad(static_cast<Eigen::Index>(y.size()));
  for (std::size_t k = 0; k < y.size(); ++k) {
    std::vector<double> a = y, b = y;
    a[k] += d;
    b[k] -= d;
    grad[static_cast<Eigen::Index>(k)] =
        phase_ratio(value_off_zero_set(h, complexify(a)), value_off_zero_set(h, complexify(b))) / (2 * d);
  }
  return grad;
}

FiberChart::FiberChart(const MixedPolynomial& f, SpherePoint anchor) : f_(&f), anchor_(std::move(anchor)) {
  f_anchor_ = value_off_zero_set(f, anchor_.p);
  normal_radial_ = to_eigen(realify(anchor_.p)) / anchor_.radius;
  const Eigen::VectorXd grad = arg_gradient_fd(f, anchor_.p);
  Eigen::VectorXd tangential = grad - grad.dot(normal_radial_) * normal_radial_;
  if (!(tangential.norm() > 1e-8 * std::max(grad.norm(), 1.0 / anchor_.radius)))
    throw Error(ErrorCode::HypothesisViolation, "p and grad arg f are R-dependent: phi_f is singular at p",
                "phi_f_singular_at_p");
  normal_phase_ = tangential / tangential.norm();
  Eigen::MatrixXd normals(normal_radial_.size(), 2);
  normals.col(0) = normal_radial_;
  normals.col(1) = normal_phase_;
  frame_ = orthonormal_complement(normals);
}

double FiberChart::residual(const ComplexVector& z) const {
  return std::abs((norm(z) - anchor_.radius) / anchor_.radius) + std::abs(phase_ratio(f_->evaluate(z), f_anchor_));
}

ComplexVector FiberChart::point(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd base = to_eigen(realify(anchor_.p)) + frame_ * x;
  const double eps = anchor_.radius;
  auto at = [&](const Eigen::Vector2d& c) {
    const Eigen::VectorXd y = base + c[0] * normal_radial_ + c[1] * normal_phase_;
    return complexify(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  };
  auto constraints = [&](const Eigen::Vector2d& c) {
    const ComplexVector z = at(c);
    return Eigen::Vector2d((norm(z) - eps) / eps, phase_ratio(value_off_zero_set(*f_, z), f_anchor_));
  };
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  Eigen::Vector2d F = constraints(c);
  double r = F.lpNorm<1>();
  const double delta = 1e-7 * eps;
  for (int iter = 0; iter < 10 && r > 1e-15; ++iter) {
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e[k] = delta;
      J.col(k) = (constraints(c + e) - constraints(c - e)) / (2 * delta);
    }
    const Eigen::Vector2d dc = J.fullPivLu().solve(-F);
    double damping = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 6; ++tries, damping *= 0.5) {
      const Eigen::Vector2d trial = c + damping * dc;
      const Eigen::Vector2d Ft = constraints(trial);
      if (Ft.lpNorm<1>() < r) {
        c = trial;
        F = Ft;
        r = Ft.lpNorm<1>();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(r <= 1e-10)) throw Error(ErrorCode::Numeric, "fiber corrector did not converge", "corrector_divergence");
  return at(c);
}

Eigen::MatrixXd restricted_arg_hessian_fd(const MixedPolynomial& f, const MixedPolynomial& g, double s,
                                          const FiberChart& chart, double step) {
  const int m = chart.dim();
  const SpherePoint& p = chart.anchor();
  const Complex f0 = value_off_zero_set(f, p.p);
  const Complex g0 = value_off_zero_set(g, p.p);
  const double h = step * p.radius;
  auto theta = [&](const Eigen::VectorXd& x) {
    const ComplexVector z = chart.point(x);
    return phase_ratio(value_off_zero_set(g, z), g0) - s * phase_ratio(value_off_zero_set(f, z), f0);
  };
  auto unit = [&](int i, double a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[i] = a;
    return e;
  };
  const double t0 = theta(Eigen::VectorXd::Zero(m));
  Eigen::MatrixXd H(m, m);
  for (int i = 0; i < m; ++i) {
    H(i, i) = (theta(unit(i, h)) - 2 * t0 + theta(unit(i, -h))) / (h * h);
    for (int j = i + 1; j < m; ++j) {
      const Eigen::VectorXd ei = unit(i, h), ej = unit(j, h);
      H(i, j) = (theta(ei + ej) - theta(ei - ej) - theta(-ei + ej) + theta(-ei - ej)) / (4 * h * h);
      H(j, i) = H(i, j);
    }
  }
  return H;
}

HessianVerdict hessian_verdict(const MixedPolynomial& f, const MixedPolynomial& g, double s, const SpherePoint& p,
                               double step) {
  const FiberChart chart(f, p);
  HessianVerdict v;
  v.H = restricted_arg_hessian_fd(f, g, s, chart, step);
  v.rank = rank_with_gap(v.H, kHessianRegularTol);
  if (v.H.rows() == 0) {
    v.nondegenerate = true;
    return v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v.H, Eigen::EigenvaluesOnly);
  v.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  v.min_abs_eigenvalue = INFINITY;
  for (double e : v.eigenvalues) {
    v.min_abs_eigenvalue = std::min(v.min_abs_eigenvalue, std::abs(e));
    v.spectral_norm = std::max(v.spectral_norm, std::abs(e));
  }
  v.nondegenerate = v.min_abs_eigenvalue > kHessianRegularTol * std::max(1.0, v.spectral_norm);
  return v;
}

}  // namespace milnor::oracle
