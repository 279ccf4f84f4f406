#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "criteria.hpp"
#include "linalg.hpp"

// Finite-difference ground truth for the symbolic criteria. Nothing here
// touches symbolic derivatives: only polynomial values are used.
namespace milnor::oracle {

inline constexpr double kJacobianStep = 1e-5;
inline constexpr double kHessianStep = 1e-4;
// Jacobian of Phi counts as rank deficient when sigma_2 <= this * max(sigma_1, 1).
inline constexpr double kJacobianRankTol = 1e-7;
// Restricted Hessian counts as non-degenerate when min |eig| > this * max(1, ||H||).
inline constexpr double kHessianRegularTol = 1e-4;

// Orthonormal frame of T_p S_eps in R^{2n} and the retraction
// x -> eps (p + sum x_i u_i) / ||p + sum x_i u_i||.
class SphereChart {
 public:
  // seed = nothing: frame from a QR of realify(p); otherwise rotated by a
  // random orthogonal matrix drawn from the seed.
  explicit SphereChart(SpherePoint anchor, std::optional<std::uint64_t> seed = std::nullopt);

  const SpherePoint& anchor() const noexcept { return anchor_; }
  const Eigen::MatrixXd& frame() const noexcept { return frame_; }  // 2n x (2n - 1)
  int dim() const noexcept { return static_cast<int>(frame_.cols()); }
  ComplexVector retract(const Eigen::VectorXd& x) const;

 private:
  SpherePoint anchor_;
  Eigen::MatrixXd frame_;
};

// 2 x (2n - 1): rows are the derivatives of arg f and arg g along the chart.
// The step is halved while a stencil phase ratio exceeds pi/4; throws
// Numeric ("step_underflow") below 1e-12 and PointOnZeroSet
// ("stencil_hits_K") when a node lies on K_fg.
Eigen::MatrixXd jacobian_fd(const MixedPolynomial& f, const MixedPolynomial& g, const SphereChart& chart,
                            double step = kJacobianStep);

struct JacobianVerdict {
  RankReport rank;
  bool deficient = false;  // rank <= 1
  double step = 0.0;
};
// Re-runs jacobian_fd with step / scale when the largest entry (per unit chart
// dimension) exceeds 1; `step` in the verdict is the one finally used.
JacobianVerdict jacobian_verdict(const MixedPolynomial& f, const MixedPolynomial& g, const SphereChart& chart,
                                 double step = kJacobianStep);

// Central-difference gradient of arg h in R^{2n} at p.
Eigen::VectorXd arg_gradient_fd(const MixedPolynomial& h, const ComplexVector& p, double step = 1e-6);

// Local chart of the fiber {||z|| = eps, arg f(z) = arg f(p)} through p.
class FiberChart {
 public:
  // Throws HypothesisViolation ("phi_f_singular_at_p") when p and the
  // gradient of arg f are R-dependent.
  FiberChart(const MixedPolynomial& f, SpherePoint anchor);

  const SpherePoint& anchor() const noexcept { return anchor_; }
  const Eigen::MatrixXd& frame() const noexcept { return frame_; }  // 2n x (2n - 2)
  int dim() const noexcept { return static_cast<int>(frame_.cols()); }

  // Point of the fiber over p + sum x_k u_k, corrected along the normal
  // plane by Newton's method. Throws Numeric ("corrector_divergence").
  ComplexVector point(const Eigen::VectorXd& x) const;
  // Constraint residual |(||z|| - eps) / eps| + |arg(f(z) / f(p))|.
  double residual(const ComplexVector& z) const;

 private:
  const MixedPolynomial* f_;
  SpherePoint anchor_;
  Complex f_anchor_;
  Eigen::MatrixXd frame_;
  Eigen::VectorXd normal_radial_, normal_phase_;
};

// Symmetrised central-difference Hessian of theta = arg g - s arg f along the
// fiber chart, phases measured relative to the anchor.
Eigen::MatrixXd restricted_arg_hessian_fd(const MixedPolynomial& f, const MixedPolynomial& g, double s,
                                          const FiberChart& chart, double step = kHessianStep);

struct HessianVerdict {
  Eigen::MatrixXd H;
  std::vector<double> eigenvalues;  // ascending
  double min_abs_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  bool nondegenerate = false;
  RankReport rank;
};
HessianVerdict hessian_verdict(const MixedPolynomial& f, const MixedPolynomial& g, double s, const SpherePoint& p,
                               double step = kHessianStep);

using milnor::rank_with_gap;

}  // namespace milnor::oracle
