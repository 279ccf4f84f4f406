#include <doctest.h>

#include "criteria.hpp"
#include "error.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "oracle.hpp"

using namespace milnor;
using testing::on_sphere;
using testing::poly;

TEST_CASE("rank_with_gap") {
  auto r = oracle::rank_with_gap(Eigen::MatrixXd::Identity(3, 3), 1e-8);
  CHECK(r.rank == 3);
  CHECK(std::isinf(r.gap));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-12;
  r = oracle::rank_with_gap(d, 1e-8);
  CHECK(r.rank == 1);
  CHECK(r.gap == doctest::Approx(1e12));
  std::mt19937_64 rng(51);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd a(4, 2), b(2, 3);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = N(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = N(rng);
    CHECK(oracle::rank_with_gap(a * b, 1e-8).rank == 2);
  }
}

TEST_CASE("SphereChart: frame and retraction") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 10; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 3, 0.7), 0.7);
    const oracle::SphereChart chart(p, k % 2 ? std::optional<std::uint64_t>(k) : std::nullopt);
    const Eigen::MatrixXd& U = chart.frame();
    REQUIRE(U.cols() == 5);
    CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((U.transpose() * to_eigen(realify(p.p))).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::VectorXd x(5);
    x << 0.1, -0.2, 0.05, 0.3, 0.0;
    CHECK(norm(chart.retract(x)) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(testing::max_abs_diff(chart.retract(Eigen::VectorXd::Zero(5)), p.p) < 1e-15);
  }
}

TEST_CASE("jacobian_fd: regular and everywhere-singular pairs") {
  std::mt19937_64 rng(53);
  const auto z1 = poly("z1", 2), z2 = poly("z2", 2), z1bar = poly("~z1", 2);
  for (int k = 0; k < 30; ++k) {
    const auto p = testing::sphere_point(rng, 2);
    if (std::min(std::abs(p[0]), std::abs(p[1])) < 0.05) continue;
    const oracle::SphereChart chart(on_sphere(p));
    const auto reg = oracle::jacobian_verdict(z1, z2, chart);
    CHECK(reg.rank.rank == 2);
    CHECK(reg.rank.sigma[1] / reg.rank.sigma[0] > 1e-3);
    CHECK_FALSE(reg.deficient);
    const auto sing = oracle::jacobian_verdict(z1, z1bar, chart);
    CHECK(sing.deficient);
  }
}

TEST_CASE("jacobian_fd: directional derivatives are Re<v, v_f>, Re<v, v_g>") {
  std::mt19937_64 rng(54);
  std::normal_distribution<double> N(0.0, 1.0);
  const auto f = poly("z1^2*~z1 + z2^2*~z2 + z1*z2*~z1", 2), g = poly("z1^2 + (0.5+1i)*z2^2", 2);
  for (int k = 0; k < 20; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 2));
    if (std::abs(f.evaluate(p.p)) < 0.05 || std::abs(g.evaluate(p.p)) < 0.05) continue;
    const oracle::SphereChart chart(p);
    const Eigen::MatrixXd J = oracle::jacobian_fd(f, g, chart);
    Eigen::VectorXd x(chart.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = N(rng);
    x /= x.norm();
    const Eigen::VectorXd u = chart.frame() * x;
    const ComplexVector dir = complexify(std::vector<double>(u.data(), u.data() + u.size()));
    const Eigen::Vector2d jx = J * x;
    CHECK(std::abs(jx[0] - hermitian(dir, v_field(f, p)).real()) <= 1e-5);
    CHECK(std::abs(jx[1] - hermitian(dir, v_field(g, p)).real()) <= 1e-5);
  }
}

TEST_CASE("jacobian_fd: stencil on the zero set") {
  const auto z1 = poly("z1", 2), z2 = poly("z2", 2);
  try {
    oracle::jacobian_fd(z1, z2, oracle::SphereChart(on_sphere({0.0, 1.0})));
    FAIL("expected PointOnZeroSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOnZeroSet);
  }
  CHECK_NOTHROW(oracle::jacobian_fd(z1, z2, oracle::SphereChart(on_sphere({0.6, 0.8}))));
}

TEST_CASE("arg_gradient_fd equals realify(v_f)") {
  std::mt19937_64 rng(55);
  const auto f = poly("z1^3 + (1-2i)*z2^2*~z1", 2);
  for (int k = 0; k < 20; ++k) {
    const auto p = testing::sphere_point(rng, 2);
    if (std::abs(f.evaluate(p)) < 0.05) continue;
    const Eigen::VectorXd grad = oracle::arg_gradient_fd(f, p);
    const auto expected = realify(v_field(f, on_sphere(p)));
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(grad[i] - expected[i]) < 1e-6);
  }
}

TEST_CASE("FiberChart: points lie on the fiber") {
  const auto f = poly("z1^2 + z2^2", 2);
  std::mt19937_64 rng(56);
  std::normal_distribution<double> N(0.0, 1e-3);
  for (int k = 0; k < 10; ++k) {
    const auto p = testing::sphere_point(rng, 2);
    if (std::abs(f.evaluate(p)) < 0.1) continue;
    const oracle::FiberChart chart(f, on_sphere(p));
    REQUIRE(chart.dim() == 2);
    Eigen::VectorXd x(2);
    x << N(rng), N(rng);
    const auto z = chart.point(x);
    CHECK(chart.residual(z) <= 1e-10);
    CHECK(std::abs(norm(z) - 1.0) <= 1e-10);
    CHECK(std::abs(std::arg(f.evaluate(z) / f.evaluate(p))) <= 1e-10);
  }
  CHECK_THROWS_AS(oracle::FiberChart(poly("z1*~z1", 1), on_sphere({1.0})), Error);
}

TEST_CASE("restricted_arg_hessian_fd: (z1, ~z1) has theta = 0 on the fiber") {
  const auto f = poly("z1", 2), g = poly("~z1", 2);
  std::mt19937_64 rng(57);
  for (int k = 0; k < 10; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 2));
    const oracle::FiberChart chart(f, p);
    CHECK(oracle::restricted_arg_hessian_fd(f, g, -1.0, chart).cwiseAbs().maxCoeff() < 1e-8);
    CHECK_FALSE(oracle::hessian_verdict(f, g, -1.0, p).nondegenerate);
  }
}

TEST_CASE("restricted_arg_hessian_fd: quadric fixture is non-degenerate") {
  const auto f = poly("z1^2 + z2^2", 2), g = poly("z1^2 - z2^2", 2);
  const auto v = oracle::hessian_verdict(f, g, 1.0, on_sphere({0.0, 1.0}));
  CHECK(v.nondegenerate);
  CHECK(v.rank.rank == 2);
  CHECK(v.H.rows() == 2);
  CHECK((v.H - v.H.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
