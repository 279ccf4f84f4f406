#include <doctest.h>

#include <numbers>

#include "error.hpp"
#include "fold.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "oracle.hpp"

using namespace milnor;
using testing::on_sphere;
using testing::poly;

namespace {

const Complex I(0.0, 1.0);

Eigen::MatrixXcd complex_columns(const Eigen::MatrixXd& frame) {
  const Eigen::Index n = frame.rows() / 2;
  Eigen::MatrixXcd V(n, frame.cols());
  for (Eigen::Index c = 0; c < frame.cols(); ++c)
    for (Eigen::Index j = 0; j < n; ++j) V(j, c) = Complex(frame(2 * j, c), frame(2 * j + 1, c));
  return V;
}

// Wirtinger Hessian blocks of F = -i (log(g/g(p)) - s log(f/f(p))) from a
// central-difference real Hessian in R^{2n}.
HessianBlocks blocks_fd(const MixedPolynomial& f, const MixedPolynomial& g, double s, const ComplexVector& p) {
  const int n = static_cast<int>(p.size());
  const Complex f0 = f.evaluate(p), g0 = g.evaluate(p);
  auto F = [&](const ComplexVector& q) {
    return -I * (std::log(g.evaluate(q) / g0) - s * std::log(f.evaluate(q) / f0));
  };
  auto unit = [&](int a) {
    ComplexVector e(n, 0.0);
    e[a / 2] = a % 2 ? I : Complex(1.0);
    return e;
  };
  // Four-point mixed stencil at h and h/2, one Richardson step.
  auto hessian = [&](double h) {
    Eigen::MatrixXcd H(2 * n, 2 * n);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        const auto ea = unit(a), eb = unit(b);
        auto at = [&](double sa, double sb) {
          ComplexVector q = p;
          for (int j = 0; j < n; ++j) q[j] += sa * h * ea[j] + sb * h * eb[j];
          return F(q);
        };
        H(a, b) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
      }
    return H;
  };
  const double h = 1e-4;
  const Eigen::MatrixXcd H = (4.0 * hessian(h / 2) - hessian(h)) / 3.0;
  HessianBlocks out;
  out.zz.resize(n, n);
  out.zzbar.resize(n, n);
  out.zbarz.resize(n, n);
  out.zbarzbar.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Complex xx = H(2 * j, 2 * k), xy = H(2 * j, 2 * k + 1), yx = H(2 * j + 1, 2 * k),
                    yy = H(2 * j + 1, 2 * k + 1);
      out.zz(j, k) = 0.25 * (xx - I * xy - I * yx - yy);
      out.zzbar(j, k) = 0.25 * (xx + I * xy - I * yx + yy);
      out.zbarz(j, k) = 0.25 * (xx - I * xy + I * yx + yy);
      out.zbarzbar(j, k) = 0.25 * (xx + I * xy + I * yx - yy);
    }
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("tangent_basis: coordinate example") {
  const auto p = on_sphere({1.0, 0.0});
  const auto tb = tangent_basis(p, ComplexVector{I, 0.0});
  REQUIRE(tb.columns.cols() == 2);
  for (int c = 0; c < 2; ++c) CHECK(std::abs(tb.columns(0, c)) < 1e-15);
  // The two columns span the real plane of the second coordinate.
  const Complex a = tb.columns(1, 0), b = tb.columns(1, 1);
  CHECK(std::abs(std::abs(a) - 1.0) < 1e-15);
  CHECK(std::abs((a * std::conj(b)).real()) < 1e-15);
}

TEST_CASE("tangent_basis: n = 1 is empty") {
  const auto tb = tangent_basis(on_sphere({1.0}), ComplexVector{I});
  CHECK(tb.columns.cols() == 0);
  const auto M = assemble_M(hessian_blocks(MfpmPair::make(poly("z1", 1), poly("z1^2", 1)), on_sphere({1.0})),
                            tb.columns);
  CHECK(M.M.rows() == 0);
  CHECK(fold_verdict_from_matrix(M.M, 1e-6) == FoldVerdict::Fold);
}

TEST_CASE("tangent_basis: constraints and orthonormality") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto p = on_sphere(testing::sphere_point(rng, n, 0.5), 0.5);
    const auto vf = testing::gaussian_point(rng, n);
    const auto tb = k % 2 ? random_tangent_basis(p, vf, rng) : tangent_basis(p, vf);
    const auto& V = tb.columns;
    REQUIRE(V.cols() == 2 * n - 2);
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
      const ComplexVector v = from_eigen(V.col(c));
      CHECK(std::abs(hermitian(v, p.p).real()) <= 1e-12);
      CHECK(std::abs(hermitian(v, vf).real()) <= 1e-12);
      for (Eigen::Index d = 0; d < V.cols(); ++d) {
        const double gram = hermitian(v, from_eigen(V.col(d))).real();
        CHECK(std::abs(gram - (c == d ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
  // v_f parallel to p leaves no fiber tangent space of the right dimension.
  CHECK_THROWS_AS(tangent_basis(on_sphere({1.0, 0.0}), ComplexVector{2.0, 0.0}), Error);
}

TEST_CASE("hessian_blocks: closed forms") {
  // F = -i (log ~z1 + log z1): zz = i / z1^2, zbarzbar = i / ~z1^2, mixed blocks 0.
  const auto pair = MfpmPair::make(poly("z1", 1), poly("~z1", 1));
  const auto b = hessian_blocks(pair, on_sphere({1.0}));
  CHECK(std::abs(b.zz(0, 0) - I) < 1e-15);
  CHECK(std::abs(b.zbarzbar(0, 0) - I) < 1e-15);
  CHECK(std::abs(b.zzbar(0, 0)) < 1e-15);
  CHECK(std::abs(b.zbarz(0, 0)) < 1e-15);

  // log(z1 ~z1) has vanishing mixed second derivative.
  const auto pair2 = MfpmPair::make(poly("z1 + z2", 2), poly("z1*~z1*z2 + z2^2*~z2", 2));
  REQUIRE(pair2.s());
  const auto b2 = hessian_blocks(pair2, on_sphere({std::sqrt(0.5), std::sqrt(0.5) * I}));
  const auto fd2 = blocks_fd(pair2.f(), pair2.g(), pair2.s_value(), {std::sqrt(0.5), std::sqrt(0.5) * I});
  CHECK(max_abs(b2.zzbar - fd2.zzbar) < 1e-5);
}

TEST_CASE("hessian_blocks match finite differences") {
  std::mt19937_64 rng(42);
  const std::vector<std::pair<const char*, const char*>> pairs{
      {"z1^2 + z2^2", "z1^2 - z2^2"},
      {"z1^2*~z1 + z2^2*~z2", "z1^2 + (0.5+1i)*z2^2"},
      {"z1^3 + z2^2", "z1^3 - 2*z2^2 + z1^4*~z1"},
      {"z1", "~z1"}};
  for (const auto& [fs, gs] : pairs) {
    const auto pair = MfpmPair::make(poly(fs, 2), poly(gs, 2));
    REQUIRE(pair.s());
    for (int k = 0; k < 10; ++k) {
      const auto p = testing::sphere_point(rng, 2);
      if (std::abs(pair.f().evaluate(p)) < 0.05 || std::abs(pair.g().evaluate(p)) < 0.05) continue;
      const auto b = hessian_blocks(pair, on_sphere(p));
      const auto fd = blocks_fd(pair.f(), pair.g(), pair.s_value(), p);
      CHECK(max_abs(b.zz - fd.zz) < 1e-5);
      CHECK(max_abs(b.zzbar - fd.zzbar) < 1e-5);
      CHECK(max_abs(b.zbarz - fd.zbarz) < 1e-5);
      CHECK(max_abs(b.zbarzbar - fd.zbarzbar) < 1e-5);
    }
  }
}

TEST_CASE("assemble_M: (z1, ~z1) gives M = 0") {
  const auto pair = MfpmPair::make(poly("z1", 2), poly("~z1", 2));
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 2));
    const auto tb = random_tangent_basis(p, v_field(pair.f(), p), rng);
    const auto M = assemble_M(hessian_blocks(pair, p), tb.columns);
    CHECK(M.M.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("assemble_M: congruence under real changes of basis") {
  const auto pair = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  std::mt19937_64 rng(44);
  std::normal_distribution<double> N(0.0, 1.0);
  const auto p = on_sphere({0.0, std::polar(1.0, 0.3)});
  const auto blocks = hessian_blocks(pair, p);
  const auto V = tangent_basis(p, v_field(pair.f(), p)).columns;
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd A(V.cols(), V.cols());
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = N(rng);
    const Eigen::MatrixXd lhs = assemble_M(blocks, V * A.cast<Complex>()).M;
    const Eigen::MatrixXd rhs = A.transpose() * assemble_M(blocks, V).M * A;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("M equals the fiber-chart Hessian of the argument map at singular points") {
  const auto pair = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  for (double phase : {0.0, 0.7, 2.1}) {
    for (const ComplexVector& z : {ComplexVector{0.0, std::polar(1.0, phase)}, ComplexVector{std::polar(1.0, phase), 0.0}}) {
      const auto p = on_sphere(z);
      const oracle::FiberChart chart(pair.f(), p);
      const Eigen::MatrixXd H = oracle::restricted_arg_hessian_fd(pair.f(), pair.g(), pair.s_value(), chart);
      const Eigen::MatrixXd M = assemble_M(hessian_blocks(pair, p), complex_columns(chart.frame())).M;
      CHECK((H - M).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, M.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("classify_fold: fixtures") {
  const auto conj_pair = MfpmPair::make(poly("z1", 2), poly("~z1", 2));
  const auto coord = MfpmPair::make(poly("z1", 2), poly("z2", 2));
  const auto quad = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  std::mt19937_64 rng(45);
  for (int k = 0; k < 10; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 2));
    const auto r = classify_fold(conj_pair, p);
    CHECK(r.verdict == FoldVerdict::DegenerateSingular);
    CHECK(r.M.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(classify_fold(coord, p).verdict == FoldVerdict::NotSingular);
  }
  const auto p = on_sphere({0.0, 1.0});
  const auto rq = classify_fold(quad, p);
  const auto ov = oracle::hessian_verdict(quad.f(), quad.g(), quad.s_value(), p);
  CHECK((rq.verdict == FoldVerdict::Fold) == ov.nondegenerate);
  CHECK(rq.verdict == FoldVerdict::Fold);
  CHECK(oracle::rank_with_gap(rq.M, 1e-6).rank == ov.rank.rank);
  CHECK_FALSE(rq.trail.empty());
}

TEST_CASE("classify_fold: hypotheses") {
  const auto polar_only = MfpmPair::make(poly("z1 + z2^2*~z2", 2), poly("z1*z2", 2));
  try {
    classify_fold(polar_only, on_sphere({std::sqrt(0.5), std::sqrt(0.5)}));
    FAIL("expected HypothesisViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
  const auto quad = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  try {
    classify_fold(quad, on_sphere({std::sqrt(0.5), I * std::sqrt(0.5)}));
    FAIL("expected PointOnZeroSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOnZeroSet);
  }
}

TEST_CASE("fold_verdict_from_matrix") {
  Eigen::MatrixXd M(2, 2);
  M << 1.0, 0.0, 0.0, 1e-9;
  double min_abs = 0.0;
  CHECK(fold_verdict_from_matrix(M, 1e-6, nullptr, &min_abs) == FoldVerdict::DegenerateSingular);
  CHECK(min_abs == doctest::Approx(1e-9));
  M(1, 1) = -0.5;
  CHECK(fold_verdict_from_matrix(M, 1e-6) == FoldVerdict::Fold);
  CHECK(fold_verdict_from_matrix(Eigen::MatrixXd::Zero(2, 2), 1e-6) == FoldVerdict::DegenerateSingular);
}
