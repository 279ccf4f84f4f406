#include <doctest.h>

#include <numbers>

#include "criteria.hpp"
#include "error.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "weights.hpp"

using namespace milnor;
using testing::on_sphere;
using testing::poly;

namespace {

const Complex I(0.0, 1.0);

// v_h from central differences of h alone.
ComplexVector v_field_fd(const MixedPolynomial& h, const ComplexVector& p) {
  const double step = 1e-6;
  const Complex value = testing::naive_eval(h, p);
  ComplexVector v(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    auto shifted = [&](Complex d) {
      ComplexVector q = p;
      q[j] += d;
      return testing::naive_eval(h, q);
    };
    const Complex dx = (shifted(step) - shifted(-step)) / (2 * step);
    const Complex dy = (shifted(I * step) - shifted(-I * step)) / (2 * step);
    const Complex dz = 0.5 * (dx - I * dy), dzbar = 0.5 * (dx + I * dy);
    v[j] = I * (std::conj(dz / value) - dzbar / value);
  }
  return v;
}

}  // namespace

TEST_CASE("v_field: single-variable examples") {
  const auto p = on_sphere({1.0});
  const auto a = v_field(poly("z1", 1), p);
  CHECK(std::abs(a[0] - I) < 1e-15);
  const auto b = v_field(poly("~z1", 1), p);
  CHECK(std::abs(b[0] + I) < 1e-15);
  const auto c = v_field(poly("z1*~z1", 1), on_sphere({Complex(0.6, 0.8)}));
  CHECK(std::abs(c[0]) < 1e-15);
}

TEST_CASE("v_field matches finite differences") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto h = testing::random_poly(rng, 2, 4, 2);
    if (h.is_zero()) continue;
    const auto p = testing::sphere_point(rng, 2);
    if (std::abs(h.evaluate(p)) < 1e-2 * h.magnitude(p)) continue;
    const double scale = std::max(1.0, norm(v_field(h, on_sphere(p))));
    CHECK(testing::max_abs_diff(v_field(h, on_sphere(p)), v_field_fd(h, p)) <= 1e-6 * scale);
  }
}

TEST_CASE("v_field rejects points of the zero set") {
  CHECK_THROWS_AS(v_field(poly("z1", 2), on_sphere({0.0, 1.0})), Error);
  try {
    v_field(poly("z1^2 + z2^2", 2), on_sphere({std::sqrt(0.5), I * std::sqrt(0.5)}));
    FAIL("expected PointOnZeroSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOnZeroSet);
  }
}

TEST_CASE("SpherePoint::make projects near points and rejects far ones") {
  const auto p = SpherePoint::make({1.0 + 1e-8, 0.0}, 1.0);
  CHECK(std::abs(norm(p.p) - 1.0) < 1e-15);
  CHECK_THROWS_AS(SpherePoint::make({1.1, 0.0}, 1.0), Error);
  CHECK_THROWS_AS(SpherePoint::make({1.0}, -1.0), Error);
}

TEST_CASE("realify and the hermitian form") {
  const ComplexVector a{Complex(1, 2)};
  CHECK(realify(a) == std::vector<double>{1.0, 2.0});
  CHECK(hermitian(ComplexVector{I}, ComplexVector{1.0}).real() == 0.0);
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const auto u = testing::gaussian_point(rng, 3), v = testing::gaussian_point(rng, 3);
    const auto ru = realify(u), rv = realify(v);
    double dot = 0.0;
    for (std::size_t i = 0; i < ru.size(); ++i) dot += ru[i] * rv[i];
    CHECK(std::abs(hermitian(u, v).real() - dot) <= 1e-13);
    CHECK(complexify(ru) == u);
  }
}

TEST_CASE("phi_f_singular") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 20; ++k) {
    const auto p1 = on_sphere(testing::sphere_point(rng, 1));
    CHECK_FALSE(phi_f_singular(poly("z1", 1), p1).dependent);
    CHECK(phi_f_singular(poly("z1*~z1", 1), p1).dependent);
    const auto p2 = testing::sphere_point(rng, 2);
    const auto f = poly("z1^2 + z2^2", 2);
    if (std::abs(f.evaluate(p2)) < 1e-3) continue;
    CHECK_FALSE(phi_f_singular(f, on_sphere(p2)).dependent);
  }
}

TEST_CASE("compute_s") {
  const WeightType a{{1, 1}, 2, WeightKind::Polar}, b{{1, 1}, 1, WeightKind::Polar};
  CHECK(compute_s(a, a) == Rational(1));
  // d_g w_f = s d_f w_g with f of degree 1 and g of degree 2
  CHECK(compute_s(b, a) == Rational(2));
  CHECK(compute_s(a, b) == Rational(1, 2));
  try {
    compute_s(WeightType{{1, 2}, 3, WeightKind::Polar}, WeightType{{1, 1}, 2, WeightKind::Polar});
    FAIL("expected NotProportional");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotProportional);
  }
  CHECK_THROWS_AS(compute_s(WeightType{{1, 1}, 0, WeightKind::Polar}, a), Error);
}

TEST_CASE("MfpmPair::make detects weights and s") {
  const auto pair = MfpmPair::make(poly("z1^2*~z1 + z2^2*~z2", 2), poly("z1^2 + z2^2", 2));
  REQUIRE(pair.s());
  CHECK(*pair.s() == Rational(2));
  CHECK(pair.radially_compatible());
  CHECK(pair.polar_criterion_valid());

  const auto conj_pair = MfpmPair::make(poly("z1", 2), poly("~z1", 2));
  REQUIRE(conj_pair.s());
  CHECK(*conj_pair.s() == Rational(-1));

  CHECK_THROWS_AS(MfpmPair::make(poly("z1", 2), poly("z1", 3)), Error);
}

TEST_CASE("MfpmPair: polar-only pair has no complex criterion") {
  // Polar of type ((1,1);1) and ((1,1);2), but f is not radially homogeneous.
  const auto pair = MfpmPair::make(poly("z1 + z2^2*~z2", 2), poly("z1*z2", 2));
  REQUIRE(pair.s());
  CHECK_FALSE(pair.radially_compatible());
  CHECK_FALSE(pair.polar_criterion_valid());
  std::mt19937_64 rng(34);
  const auto p = on_sphere(testing::sphere_point(rng, 2));
  try {
    mfpm_singular_polar(pair, p);
    FAIL("expected HypothesisViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
  CHECK_NOTHROW(mfpm_singular_general(pair, p));
}

TEST_CASE("MfpmPair::with_weights validates") {
  const auto f = poly("z1^2 + z2^3", 2), g = poly("z1^2", 2);
  const WeightType wf{{3, 2}, 6, WeightKind::Polar};
  CHECK_NOTHROW(MfpmPair::with_weights(f, g, wf, WeightType{{3, 2}, 6, WeightKind::Polar}));
  CHECK_THROWS_AS(MfpmPair::with_weights(f, g, wf, WeightType{{1, 1}, 2, WeightKind::Polar}), Error);
  CHECK_THROWS_AS(MfpmPair::with_weights(f, g, WeightType{{1, 1}, 2, WeightKind::Polar}, wf), Error);
}

TEST_CASE("general criterion: coordinate pair is regular everywhere") {
  const auto pair = MfpmPair::make(poly("z1", 2), poly("z2", 2));
  std::mt19937_64 rng(35);
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::sphere_point(rng, 2);
    if (std::min(std::abs(p[0]), std::abs(p[1])) < 1e-2) continue;
    const auto rep = mfpm_singular_general(pair, on_sphere(p));
    CHECK_FALSE(rep.dependent);
    REQUIRE(rep.sigma.size() == 3);
  }
}

TEST_CASE("general criterion: (z1, ~z1) is singular everywhere") {
  const auto pair = MfpmPair::make(poly("z1", 2), poly("~z1", 2));
  std::mt19937_64 rng(36);
  for (int k = 0; k < 50; ++k) {
    const auto p = testing::sphere_point(rng, 2);
    const auto fields = pair_fields(pair, on_sphere(p));
    CHECK(testing::max_abs_diff(fields.vg, ComplexVector{-fields.vf[0], -fields.vf[1]}) < 1e-14);
    CHECK(mfpm_singular_general(pair, on_sphere(p)).dependent);
  }
}

TEST_CASE("general criterion: quadric pair is singular exactly on z1 z2 = 0") {
  const auto pair = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  // Grid over |z1| = cos(a), |z2| = sin(a) with phases.
  for (int ia = 0; ia <= 16; ++ia)
    for (int ib = 0; ib < 8; ++ib)
      for (int ic = 0; ic < 8; ++ic) {
        const double a = ia * std::numbers::pi / 32;
        const ComplexVector p{std::cos(a) * std::polar(1.0, ib * 0.79), std::sin(a) * std::polar(1.0, ic * 0.83)};
        const auto& f = pair.f();
        const auto& g = pair.g();
        if (std::abs(f.evaluate(p)) < 1e-3 || std::abs(g.evaluate(p)) < 1e-3) continue;
        const bool on_axis = ia == 0 || ia == 16;
        CHECK(mfpm_singular_general(pair, on_sphere(p)).dependent == on_axis);
        CHECK(mfpm_singular_polar(pair, on_sphere(p)).dependence.dependent == on_axis);
      }
}

TEST_CASE("polar criterion: examples") {
  const auto coord = MfpmPair::make(poly("z1", 2), poly("z2", 2));
  REQUIRE(coord.s());
  CHECK(*coord.s() == Rational(1));
  CHECK_FALSE(mfpm_singular_polar(coord, on_sphere({std::sqrt(0.5), std::sqrt(0.5)})).dependence.dependent);

  const auto quad = MfpmPair::make(poly("z1^2 + z2^2", 2), poly("z1^2 - z2^2", 2));
  const auto rep = mfpm_singular_polar(quad, on_sphere({0.0, 1.0}));
  CHECK(rep.dependence.dependent);
  CHECK(rep.residual < 1e-15);
}

TEST_CASE("polar criterion agrees with the general one on compatible pairs") {
  std::mt19937_64 rng(37);
  const std::vector<std::pair<const char*, const char*>> pairs{
      {"z1^2 + z2^2", "z1^2 - z2^2"},
      {"z1^2*~z1 + z2^2*~z2", "z1^2 + (0.5+1i)*z2^2"},
      {"z1^3 + z2^2", "z1^3 - 2*z2^2"},
      {"z1*z2", "z1^2 + z2^2"}};
  for (const auto& [fs, gs] : pairs) {
    const auto pair = MfpmPair::make(poly(fs, 2), poly(gs, 2));
    REQUIRE(pair.polar_criterion_valid());
    for (int k = 0; k < 300; ++k) {
      const auto p = on_sphere(testing::sphere_point(rng, 2));
      if (std::abs(pair.f().evaluate(p.p)) < 1e-4 || std::abs(pair.g().evaluate(p.p)) < 1e-4) continue;
      const auto gen = mfpm_singular_general(pair, p);
      const auto pol = mfpm_singular_polar(pair, p);
      if (gen.indeterminate || pol.dependence.indeterminate) continue;
      CHECK(gen.dependent == pol.dependence.dependent);
    }
  }
}

TEST_CASE("torus flow") {
  const WeightType w{{1, 1}, 1, WeightKind::Polar};
  const ComplexVector p{1.0, 1.0};
  CHECK(testing::max_abs_diff(torus_flow(w, 0.0, p), p) == 0.0);
  const auto q = torus_flow(w, std::numbers::pi, p);
  CHECK(testing::max_abs_diff(q, ComplexVector{-1.0, -1.0}) < 1e-15);
  const auto f = poly("z1", 2);
  CHECK(std::abs(f.evaluate(q) + f.evaluate(p)) < 1e-15);

  // f(h_t(p)) = e^{it} f(p) along the flow, and the generator is its derivative.
  std::mt19937_64 rng(38);
  const auto g = poly("z1^2 + z2^3", 2);
  const WeightType wg{{3, 2}, 6, WeightKind::Polar};
  std::uniform_real_distribution<double> T(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 50; ++k) {
    const auto z = testing::gaussian_point(rng, 2);
    const double t = T(rng);
    CHECK(std::abs(g.evaluate(torus_flow(wg, t, z)) - std::polar(1.0, t) * g.evaluate(z)) <=
          1e-10 * (1 + std::abs(g.evaluate(z))));
    const double h = 1e-6;
    const auto a = torus_flow(wg, h, z), b = torus_flow(wg, -h, z), gen = torus_generator(wg, z);
    for (int j = 0; j < 2; ++j) CHECK(std::abs((a[j] - b[j]) / (2 * h) - gen[j]) < 1e-8);
  }
}

TEST_CASE("pairing with the torus generator on compatible pairs") {
  // <i w o p / d_f, v_f> = 1 when f is polar and radial for w.
  std::mt19937_64 rng(39);
  const auto f = poly("z1^2*~z1 + (2-1i)*z2^2*~z2 + z1*z2*~z2", 2);
  const WeightType w{{1, 1}, 1, WeightKind::Polar};
  for (int k = 0; k < 50; ++k) {
    const auto p = on_sphere(testing::sphere_point(rng, 2));
    const auto vf = v_field(f, p);
    ComplexVector v(2);
    for (int j = 0; j < 2; ++j) v[j] = I * static_cast<double>(w.w[j]) * p.p[j] / static_cast<double>(w.d);
    CHECK(std::abs(hermitian(v, vf) - 1.0) < 1e-12);
  }
}
