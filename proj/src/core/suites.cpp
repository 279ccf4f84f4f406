#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "criteria.hpp"
#include "error.hpp"
#include "fold.hpp"
#include "linalg.hpp"
#include "newton.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "reports.hpp"
#include "search.hpp"
#include "weights.hpp"

namespace milnor {
namespace {

using Json = nlohmann::json;
using Rng = std::mt19937_64;

// ---------------------------------------------------------------- helpers

// Term-by-term evaluation with std::pow, kept apart from MixedPolynomial::evaluate.
Complex naive_eval(const MixedPolynomial& f, const ComplexVector& p) {
  Complex sum = 0.0;
  for (const auto& t : f.terms()) {
    Complex term = t.coeff;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (t.nu[j]) term *= std::pow(p[j], t.nu[j]);
      if (t.mu[j]) term *= std::pow(std::conj(p[j]), t.mu[j]);
    }
    sum += term;
  }
  return sum;
}

Complex random_coeff(Rng& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    const Complex c(gauss(rng), gauss(rng));
    if (std::abs(c) > 0.3) return c;
  }
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ComplexVector gaussian_point(Rng& rng, int n, double scale) {
  std::normal_distribution<double> gauss;
  ComplexVector p(static_cast<std::size_t>(n));
  for (auto& c : p) c = scale * Complex(gauss(rng), gauss(rng));
  return p;
}

ComplexVector sphere_point(Rng& rng, int n, double radius) {
  ComplexVector p = gaussian_point(rng, n, 1.0);
  const double r = norm(p);
  for (auto& c : p) c *= radius / r;
  return p;
}

std::vector<std::int64_t> random_primitive_weight(Rng& rng, int n, int hi) {
  for (;;) {
    std::vector<std::int64_t> w(static_cast<std::size_t>(n));
    std::int64_t g = 0;
    for (auto& x : w) {
      x = uniform_int(rng, 1, hi);
      g = std::gcd(g, x);
    }
    if (g == 1) return w;
  }
}

// All (nu, mu) in [0, maxexp]^{2n} with the requested polar degree and,
// optionally, radial degree.
std::vector<MixedMonomial> monomials_with(int n, std::span<const std::int64_t> w, std::int64_t pdeg,
                                          std::optional<std::int64_t> rdeg, int maxexp, bool holomorphic) {
  std::vector<MixedMonomial> out;
  const int slots = holomorphic ? n : 2 * n;
  std::vector<int> e(static_cast<std::size_t>(slots), 0);
  for (;;) {
    MixedMonomial m{1.0, std::vector<int>(e.begin(), e.begin() + n),
                    holomorphic ? std::vector<int>(static_cast<std::size_t>(n), 0)
                                : std::vector<int>(e.begin() + n, e.end())};
    if (monomial_degree(m, w, WeightKind::Polar) == pdeg &&
        (!rdeg || monomial_degree(m, w, WeightKind::Radial) == *rdeg))
      out.push_back(std::move(m));
    int k = 0;
    while (k < slots && ++e[static_cast<std::size_t>(k)] > maxexp) e[static_cast<std::size_t>(k++)] = 0;
    if (k == slots) break;
  }
  return out;
}

MixedPolynomial pick_terms(Rng& rng, int n, std::vector<MixedMonomial> pool, int count) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(count)));
  for (auto& m : pool) m.coeff = random_coeff(rng);
  return MixedPolynomial::from_terms(n, pool);
}

struct NamedPair {
  std::string name;
  MfpmPair pair;
};

MfpmPair fixture(const char* f, const char* g, int n = 2) {
  return MfpmPair::make(parse_polynomial(f, n), parse_polynomial(g, n));
}

// Random n = 2 pair, polar weighted homogeneous for one weight w. With
// `compatible` both are also radially weighted homogeneous for w.
NamedPair random_polar_pair(Rng& rng, bool compatible, int index) {
  const int n = 2;
  for (;;) {
    const auto w = random_primitive_weight(rng, n, 3);
    auto side = [&](std::int64_t& d) -> std::optional<MixedPolynomial> {
      std::optional<std::int64_t> rdeg;
      if (compatible) {
        rdeg = uniform_int(rng, 2, 7);
        d = uniform_int(rng, 1, static_cast<int>(*rdeg));
      } else {
        d = uniform_int(rng, 1, 4);
      }
      const auto pool = monomials_with(n, w, d, rdeg, 4, false);
      if (pool.size() < 2) return std::nullopt;
      for (int attempt = 0; attempt < 8; ++attempt) {
        MixedPolynomial h = pick_terms(rng, n, pool, uniform_int(rng, 2, 3));
        if (!compatible && check_weighted(h, w, WeightKind::Radial)) continue;
        return h;
      }
      return std::nullopt;
    };
    std::int64_t df = 0, dg = 0;
    const auto f = side(df);
    if (!f) continue;
    const auto g = side(dg);
    if (!g) continue;
    try {
      MfpmPair pair = MfpmPair::with_weights(*f, *g, WeightType{w, df, WeightKind::Polar},
                                             WeightType{w, dg, WeightKind::Polar});
      if (compatible != pair.polar_criterion_valid()) continue;
      return NamedPair{std::string(compatible ? "compatible-" : "polar-") + std::to_string(index), std::move(pair)};
    } catch (const Error&) {
      continue;
    }
  }
}

bool off_zero_sets(const MfpmPair& pair, const ComplexVector& p, double rel = 1e-6) {
  return std::abs(pair.f().evaluate(p)) > rel * pair.f().magnitude(p) &&
         std::abs(pair.g().evaluate(p)) > rel * pair.g().magnitude(p);
}

// Known or searched singular points, then torus-flowed copies.
std::vector<ComplexVector> singular_seeds(const std::string& name, const MfpmPair& pair, Rng& rng, std::uint64_t seed) {
  std::vector<ComplexVector> base;
  if (name == "z1^2+z2^2,z1^2-z2^2") {
    for (double phi : {0.0, 0.9, 2.3, 4.1}) {
      base.push_back({0.0, std::polar(1.0, phi)});
      base.push_back({std::polar(1.0, phi), 0.0});
    }
  } else if (name == "z1,~z1") {
    for (int k = 0; k < 8; ++k) {
      ComplexVector p;
      do p = sphere_point(rng, 2, 1.0);
      while (std::abs(p[0]) < 0.1);
      base.push_back(p);
    }
  } else if (name != "z1,z2") {
    SearchConfig cfg;
    cfg.starts = 16;
    cfg.seed = seed;
    cfg.classify = false;
    cfg.threads = 1;
    for (const auto& sp : find_singular_points(pair, 1.0, cfg).points) base.push_back(sp.point.p);
  }
  if (base.empty() || !pair.weight_f()) return base;
  std::vector<ComplexVector> out = base;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi * static_cast<double>(pair.weight_f()->d));
  while (out.size() < 100) {
    const ComplexVector& p = base[out.size() % base.size()];
    out.push_back(torus_flow(*pair.weight_f(), angle(rng), p));
  }
  return out;
}

std::vector<NamedPair> fixture_pairs() {
  std::vector<NamedPair> out;
  out.push_back({"z1,z2", fixture("z1", "z2")});
  out.push_back({"z1,~z1", fixture("z1", "~z1")});
  out.push_back({"z1^2+z2^2,z1^2-z2^2", fixture("z1^2+z2^2", "z1^2-z2^2")});
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

SuiteResult make_result(int criterion, const std::string& name) {
  SuiteResult r;
  r.criterion = criterion;
  r.name = name;
  r.details = Json::object();
  return r;
}

// ---------------------------------------------------------------- 1

SuiteResult suite_wirtinger(std::uint64_t seed) {
  SuiteResult r = make_result(1, "wirtinger");
  Rng rng(seed);
  const double h = 1e-5, tol = 1e-6;
  double worst = 0.0;
  long failures = 0;
  for (int c = 0; c < 500; ++c) {
    const int n = uniform_int(rng, 1, 3);
    std::vector<MixedMonomial> terms;
    const int count = uniform_int(rng, 1, 5);
    for (int t = 0; t < count; ++t) {
      MixedMonomial m{random_coeff(rng), std::vector<int>(static_cast<std::size_t>(n)),
                      std::vector<int>(static_cast<std::size_t>(n))};
      for (int j = 0; j < n; ++j) {
        m.nu[static_cast<std::size_t>(j)] = uniform_int(rng, 0, 3);
        m.mu[static_cast<std::size_t>(j)] = uniform_int(rng, 0, 3);
      }
      terms.push_back(std::move(m));
    }
    const MixedPolynomial f = MixedPolynomial::from_terms(n, terms);
    const ComplexVector p = gaussian_point(rng, n, 0.8);
    const int j = uniform_int(rng, 0, n - 1);
    auto shifted = [&](Complex delta) {
      ComplexVector q = p;
      q[static_cast<std::size_t>(j)] += delta;
      return naive_eval(f, q);
    };
    const Complex dx = (shifted(h) - shifted(-h)) / (2 * h);
    const Complex dy = (shifted(Complex(0, h)) - shifted(Complex(0, -h))) / (2 * h);
    const Complex fd_z = 0.5 * (dx - Complex(0, 1) * dy);
    const Complex fd_zbar = 0.5 * (dx + Complex(0, 1) * dy);
    const double ez = std::abs(f.wirtinger(j, false).evaluate(p) - fd_z);
    const double ezb = std::abs(f.wirtinger(j, true).evaluate(p) - fd_zbar);
    const double e = std::max(ez, ezb);
    worst = std::max(worst, e);
    if (!(e <= tol)) ++failures;
    ++r.cases;
  }
  r.worst = worst;
  r.passed = failures == 0;
  r.summary = std::to_string(r.cases) + " cases, max abs error " + fmt(worst) + " (tol 1e-6, step 1e-5)";
  r.details = Json{{"failures", failures}, {"max_abs_error", worst}, {"tol", tol}, {"step", h}};
  return r;
}

// ---------------------------------------------------------------- 2

SuiteResult suite_euler(std::uint64_t seed) {
  SuiteResult r = make_result(2, "euler");
  Rng rng(seed);
  double worst = 0.0;
  long failures = 0, weight_failures = 0;
  int fixtures = 0;
  while (fixtures < 100) {
    const int n = uniform_int(rng, 2, 3);
    const auto w = random_primitive_weight(rng, n, 4);
    const std::int64_t d = uniform_int(rng, static_cast<int>(*std::max_element(w.begin(), w.end())), 12);
    const auto pool = monomials_with(n, w, d, std::nullopt, static_cast<int>(d), true);
    if (pool.size() < 2) continue;
    const MixedPolynomial f = pick_terms(rng, n, pool, uniform_int(rng, 2, 4));
    ++fixtures;
    const auto deg = check_weighted(f, w, WeightKind::Radial);
    if (!deg || deg->d != d) ++weight_failures;
    for (const auto& wt : detect_weights(f, WeightKind::Radial)) {
      const auto c = check_weighted(f, wt.w, WeightKind::Radial);
      if (!c || c->d != wt.d) ++weight_failures;
    }
    for (int k = 0; k < 10; ++k) {
      const ComplexVector p = gaussian_point(rng, n, 0.6);
      Complex sum = static_cast<double>(d) * f.evaluate(p);
      for (int j = 0; j < n; ++j)
        sum -= static_cast<double>(w[static_cast<std::size_t>(j)]) * p[static_cast<std::size_t>(j)] *
               f.wirtinger(j, false).evaluate(p);
      const double rel = std::abs(sum) / (1.0 + std::abs(f.evaluate(p)));
      worst = std::max(worst, rel);
      if (!(rel <= 1e-10)) ++failures;
      ++r.cases;
    }
  }
  r.worst = worst;
  r.passed = failures == 0 && weight_failures == 0;
  r.summary = std::to_string(fixtures) + " fixtures x 10 points, max residual/(1+|f|) " + fmt(worst) + " (tol 1e-10)";
  r.details = Json{{"failures", failures}, {"weight_check_failures", weight_failures}, {"max_relative_residual", worst}};
  return r;
}

// ---------------------------------------------------------------- 3

SuiteResult suite_polar_action(std::uint64_t seed) {
  SuiteResult r = make_result(3, "polar-action");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0, control_min = INFINITY;
  long failures = 0;
  int fixtures = 0;
  while (fixtures < 100) {
    const int n = uniform_int(rng, 2, 3);
    const auto w = random_primitive_weight(rng, n, 3);
    const std::int64_t d = uniform_int(rng, 1, 6);
    const auto pool = monomials_with(n, w, d, std::nullopt, 3, false);
    if (pool.size() < 2) continue;
    const MixedPolynomial f = pick_terms(rng, n, pool, uniform_int(rng, 2, 4));
    ++fixtures;
    const WeightType wt{w, d, WeightKind::Polar};
    for (int k = 0; k < 5; ++k) {
      const ComplexVector p = sphere_point(rng, n, 1.0);
      const double t = angle(rng);
      const double res = std::abs(f.evaluate(torus_flow(wt, t, p)) - std::polar(1.0, t) * f.evaluate(p));
      worst = std::max(worst, res);
      if (!(res <= 1e-10)) ++failures;
      ++r.cases;
    }
    // Negative control: the raw action with a wrong degree.
    const ComplexVector p = sphere_point(rng, n, 1.0);
    double best = 0.0;
    for (double t : {0.7, 1.9, 3.1}) best = std::max(best, polar_action_residual(f, w, d + 1, p, t));
    control_min = std::min(control_min, best / (1e-300 + std::abs(f.evaluate(p))));
  }
  r.worst = worst;
  r.passed = failures == 0 && control_min > 1e-6;
  r.summary = std::to_string(r.cases) + " cases over " + std::to_string(fixtures) + " fixtures, max residual " +
              fmt(worst) + " (tol 1e-10); wrong-degree control min " + fmt(control_min);
  r.details = Json{{"failures", failures}, {"max_residual", worst}, {"wrong_degree_control_min", control_min}};
  return r;
}

// ---------------------------------------------------------------- 4

struct PointSet {
  std::vector<ComplexVector> points;
  long singular_samples = 0;
};

PointSet sample_points(const std::string& name, const MfpmPair& pair, Rng& rng, std::uint64_t seed, int total) {
  PointSet set;
  for (auto& p : singular_seeds(name, pair, rng, seed)) {
    if (static_cast<int>(set.points.size()) >= total / 10) break;
    if (!off_zero_sets(pair, p)) continue;
    set.points.push_back(std::move(p));
  }
  set.singular_samples = static_cast<long>(set.points.size());
  while (static_cast<int>(set.points.size()) < total) {
    ComplexVector p = sphere_point(rng, pair.nvars(), 1.0);
    if (off_zero_sets(pair, p, 1e-4)) set.points.push_back(std::move(p));
  }
  return set;
}

SuiteResult suite_prop2(std::uint64_t seed) {
  SuiteResult r = make_result(4, "prop2-equivalence");
  Rng rng(seed);
  std::vector<NamedPair> pairs = fixture_pairs();
  for (int k = 0; k < 20; ++k) pairs.push_back(random_polar_pair(rng, k % 2 == 0, k));
  long hard = 0, band = 0, total = 0, skipped = 0;
  Json per_pair = Json::array(), band_log = Json::array(), hard_log = Json::array();
  bool per_pair_band_ok = true;
  for (const auto& np : pairs) {
    const PointSet set = sample_points(np.name, np.pair, rng, seed, 1000);
    long pair_hard = 0, pair_band = 0, dependent = 0, deficient = 0, pair_skipped = 0;
    for (const auto& q : set.points) {
      const SpherePoint p{q, 1.0};
      DependenceReport sym;
      oracle::JacobianVerdict fd;
      try {
        sym = mfpm_singular_general(np.pair, p);
        fd = oracle::jacobian_verdict(np.pair.f(), np.pair.g(), oracle::SphereChart(p));
      } catch (const Error&) {
        ++pair_skipped;
        continue;
      }
      dependent += sym.dependent;
      deficient += fd.deficient;
      const double ratio = sym.sigma.back() / std::max(sym.sigma.front(), 1e-300);
      const bool in_band = ratio >= 1e-9 && ratio <= 1e-7;
      if (in_band) {
        ++pair_band;
        if (band_log.size() < 50)
          band_log.push_back(Json{{"pair", np.name}, {"point", report::vector_json(q)}, {"ratio", ratio}});
      }
      if (sym.dependent != fd.deficient && !in_band) {
        ++pair_hard;
        if (hard_log.size() < 50)
          hard_log.push_back(Json{{"pair", np.name},
                                  {"point", report::vector_json(q)},
                                  {"symbolic_sigma", sym.sigma},
                                  {"oracle_sigma", fd.rank.sigma}});
      }
    }
    const long evaluated = static_cast<long>(set.points.size()) - pair_skipped;
    if (evaluated > 0 && 100 * pair_band >= evaluated) per_pair_band_ok = false;
    hard += pair_hard;
    band += pair_band;
    total += evaluated;
    skipped += pair_skipped;
    per_pair.push_back(Json{{"pair", np.name},
                            {"f", np.pair.f().to_string()},
                            {"g", np.pair.g().to_string()},
                            {"points", evaluated},
                            {"singular_samples", set.singular_samples},
                            {"symbolic_dependent", dependent},
                            {"oracle_deficient", deficient},
                            {"hard_disagreements", pair_hard},
                            {"band_cases", pair_band},
                            {"skipped", pair_skipped}});
  }
  r.cases = total;
  r.worst = static_cast<double>(band) / static_cast<double>(std::max(total, 1L));
  r.passed = hard == 0 && per_pair_band_ok && 100 * band < total;
  r.summary = std::to_string(pairs.size()) + " pairs, " + std::to_string(total) + " points: " + std::to_string(hard) +
              " hard disagreements, " + std::to_string(band) + " band cases";
  r.details = Json{{"pairs", per_pair}, {"band_log", band_log}, {"hard_log", hard_log}, {"hard_disagreements", hard}, {"band_cases", band},
                   {"skipped", skipped}};
  return r;
}

// ---------------------------------------------------------------- 5

SuiteResult suite_prop3(std::uint64_t seed) {
  SuiteResult r = make_result(5, "prop3-equivalence");
  Rng rng(seed + 1);
  std::vector<NamedPair> pairs = fixture_pairs();
  for (int k = 0; k < 10; ++k) pairs.push_back(random_polar_pair(rng, true, k));
  long disagreements = 0, total = 0, accepted = 0, residual_failures = 0, pairing_failures = 0;
  double worst_residual = 0.0, worst_pairing = 0.0;
  Json per_pair = Json::array();
  for (const auto& np : pairs) {
    if (!np.pair.polar_criterion_valid()) {
      per_pair.push_back(Json{{"pair", np.name}, {"skipped", np.pair.polar_unavailable_reason()}});
      ++disagreements;  // every listed pair must be valid
      continue;
    }
    const PointSet set = sample_points(np.name, np.pair, rng, seed, 1000);
    long pair_dis = 0, dependent = 0, evaluated = 0;
    const WeightType& wf = *np.pair.weight_f();
    for (const auto& q : set.points) {
      const SpherePoint p{q, 1.0};
      try {
        const auto general = mfpm_singular_general(np.pair, p);
        const auto polar = mfpm_singular_polar(np.pair, p);
        ++evaluated;
        dependent += polar.dependence.dependent;
        if (general.dependent != polar.dependence.dependent) ++pair_dis;
        // <v(p), v_f(p)> = 1 and <v(p), v_g(p)> = s
        const PairFields fields = pair_fields(np.pair, p);
        const ComplexVector v = torus_generator(wf, q);
        const double e = std::max(std::abs(hermitian(v, fields.vf) - 1.0),
                                  std::abs(hermitian(v, fields.vg) - np.pair.s_value()));
        worst_pairing = std::max(worst_pairing, e);
        if (!(e <= 1e-8)) ++pairing_failures;
      } catch (const Error&) {
      }
    }
    SearchConfig cfg;
    cfg.starts = 16;
    cfg.seed = seed;
    cfg.classify = false;
    const auto found = find_singular_points(np.pair, 1.0, cfg);
    for (const auto& sp : found.points) {
      ++accepted;
      worst_residual = std::max(worst_residual, sp.polar->relative_residual);
      if (!(sp.polar->relative_residual <= 1e-8)) ++residual_failures;
    }
    disagreements += pair_dis;
    total += evaluated;
    per_pair.push_back(Json{{"pair", np.name},
                            {"f", np.pair.f().to_string()},
                            {"g", np.pair.g().to_string()},
                            {"s", np.pair.s()->str()},
                            {"points", evaluated},
                            {"singular_samples", set.singular_samples},
                            {"dependent", dependent},
                            {"disagreements", pair_dis},
                            {"accepted_singular_points", static_cast<long>(found.points.size())}});
  }
  r.cases = total;
  r.worst = worst_residual;
  r.passed = disagreements == 0 && residual_failures == 0 && pairing_failures == 0;
  r.summary = std::to_string(pairs.size()) + " pairs, " + std::to_string(total) + " points: " +
              std::to_string(disagreements) + " disagreements; max |v_g - s v_f|/|v_f| " + fmt(worst_residual) +
              " over " + std::to_string(accepted) + " accepted points; pairing error " + fmt(worst_pairing);
  r.details = Json{{"pairs", per_pair},
                   {"disagreements", disagreements},
                   {"residual_failures", residual_failures},
                   {"max_relative_residual", worst_residual},
                   {"pairing_failures", pairing_failures},
                   {"max_pairing_error", worst_pairing}};
  return r;
}

// ---------------------------------------------------------------- 6

SuiteResult suite_singular_locus(std::uint64_t seed) {
  SuiteResult r = make_result(6, "singular-locus");
  const auto t0 = std::chrono::steady_clock::now();
  SearchConfig cfg;
  cfg.starts = 64;
  cfg.seed = seed;
  cfg.classify = false;
  const MfpmPair circles = fixture("z1^2+z2^2", "z1^2-z2^2");
  const auto found = find_singular_points(circles, 1.0, cfg);
  int family1 = 0, family2 = 0, off = 0, orbit_failures = 0;
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 4.0 * std::numbers::pi);
  for (const auto& sp : found.points) {
    const double a = std::abs(sp.point.p[0]), b = std::abs(sp.point.p[1]);
    if (a < 1e-6) ++family1;
    else if (b < 1e-6) ++family2;
    else ++off;
    for (int k = 0; k < 3; ++k) {
      const SpherePoint q{torus_flow(*circles.weight_f(), angle(rng), sp.point.p), 1.0};
      if (!(objective_general(circles, q) <= 10 * cfg.tol_singular)) ++orbit_failures;
    }
  }
  const auto empty = find_singular_points(fixture("z1", "z2"), 1.0, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.cases = 2;
  r.worst = seconds;
  r.passed = family1 >= 1 && family2 >= 1 && off == 0 && empty.points.empty() && orbit_failures == 0 && seconds < 60;
  r.summary = "circle z1=0: " + std::to_string(family1) + ", circle z2=0: " + std::to_string(family2) +
              ", elsewhere: " + std::to_string(off) + "; (z1,z2): " + std::to_string(empty.points.size()) +
              " points; " + fmt(seconds) + " s";
  r.details = Json{{"family_z1_zero", family1}, {"family_z2_zero", family2}, {"off_circles", off},
                   {"orbits", found.orbit_count}, {"regular_pair_points", empty.points.size()},
                   {"orbit_failures", orbit_failures}, {"seconds", seconds}};
  return r;
}

// ---------------------------------------------------------------- 7, 8

struct FoldFixture {
  std::string name;
  std::shared_ptr<MfpmPair> pair;
  std::vector<SpherePoint> points;
};

std::vector<FoldFixture> fold_fixtures(std::uint64_t seed) {
  std::vector<FoldFixture> out;
  auto add = [&](const std::string& name, MfpmPair pair, std::vector<ComplexVector> pts) {
    FoldFixture fx{name, std::make_shared<MfpmPair>(std::move(pair)), {}};
    for (auto& p : pts) fx.points.push_back(SpherePoint::make(std::move(p), 1.0));
    out.push_back(std::move(fx));
  };
  add("z1^2+z2^2,z1^2-z2^2", fixture("z1^2+z2^2", "z1^2-z2^2"),
      {{0.0, 1.0}, {0.0, std::polar(1.0, 0.7)}, {1.0, 0.0}, {std::polar(1.0, 2.1), 0.0}, {0.0, Complex(0, 1)}});
  Rng rng(seed);
  std::vector<ComplexVector> conj_pts;
  while (conj_pts.size() < 5) {
    ComplexVector p = sphere_point(rng, 2, 1.0);
    if (std::abs(p[0]) > 0.1) conj_pts.push_back(p);
  }
  add("z1,~z1", fixture("z1", "~z1"), conj_pts);
  add("z1^3+z2^2,z1^3-z2^2", fixture("z1^3+z2^2", "z1^3-z2^2"), {{0.0, 1.0}, {1.0, 0.0}, {0.0, std::polar(1.0, 1.3)}});

  auto searched = [&](const std::string& name, MfpmPair pair, int keep) {
    SearchConfig cfg;
    cfg.starts = 16;
    cfg.seed = seed;
    cfg.classify = false;
    std::vector<ComplexVector> pts;
    for (const auto& sp : find_singular_points(pair, 1.0, cfg).points) {
      if (static_cast<int>(pts.size()) >= keep) break;
      pts.push_back(sp.point.p);
    }
    add(name, std::move(pair), pts);
  };
  searched("z1^2~z1+z2^2~z2,z1^2+z2^2", fixture("z1^2*~z1+z2^2*~z2", "z1^2+z2^2"), 6);
  Rng prng(seed + 7);
  for (int k = 0; k < 5; ++k) {
    NamedPair np = random_polar_pair(prng, true, k);
    searched(np.name, std::move(np.pair), 3);
  }
  return out;
}

SuiteResult suite_fold(std::uint64_t seed) {
  SuiteResult r = make_result(7, "fold-consistency");
  long mismatches = 0, folds = 0, degenerate = 0, errors = 0, asym_failures = 0;
  double worst_conj_entry = 0.0, worst_asym = 0.0;
  Json log = Json::array();
  for (const auto& fx : fold_fixtures(seed)) {
    for (const auto& p : fx.points) {
      ++r.cases;
      Json entry{{"pair", fx.name}, {"point", report::vector_json(p.p)}};
      try {
        // Ground truth first.
        const auto truth = oracle::hessian_verdict(fx.pair->f(), fx.pair->g(), fx.pair->s_value(), p);
        const FoldReport rep = classify_fold(*fx.pair, p);
        const bool fold = rep.verdict == FoldVerdict::Fold;
        if (rep.verdict == FoldVerdict::NotSingular || fold != truth.nondegenerate) ++mismatches;
        fold ? ++folds : ++degenerate;
        worst_asym = std::max(worst_asym, rep.asymmetry);
        if (!(rep.asymmetry <= 1e-8)) ++asym_failures;
        if (fx.name == "z1,~z1") worst_conj_entry = std::max(worst_conj_entry, rep.M.cwiseAbs().maxCoeff());
        entry["verdict"] = fold_verdict_name(rep.verdict);
        entry["oracle_nondegenerate"] = truth.nondegenerate;
        entry["eigenvalues"] = rep.eigenvalues;
        entry["oracle_eigenvalues"] = truth.eigenvalues;
      } catch (const Error& e) {
        ++errors;
        entry["error"] = e.what();
      }
      log.push_back(std::move(entry));
    }
  }
  r.worst = worst_conj_entry;
  r.passed = mismatches == 0 && errors == 0 && asym_failures == 0 && worst_conj_entry <= 1e-10 && folds > 0 &&
             degenerate > 0;
  r.summary = std::to_string(r.cases) + " singular points: " + std::to_string(folds) + " fold, " +
              std::to_string(degenerate) + " degenerate, " + std::to_string(mismatches) + " oracle mismatches, " +
              std::to_string(errors) + " errors; max |M| for (z1, ~z1) " + fmt(worst_conj_entry);
  r.details = Json{{"points", log},         {"max_asymmetry", worst_asym}, {"mismatches", mismatches},
                   {"errors", errors},      {"folds", folds},             {"degenerate", degenerate},
                   {"max_conj_entry", worst_conj_entry}};
  return r;
}

SuiteResult suite_basis(std::uint64_t seed) {
  SuiteResult r = make_result(8, "basis-invariance");
  Rng rng(seed + 3);
  std::normal_distribution<double> gauss;
  long rank_changes = 0, congruence_failures = 0, errors = 0;
  double worst = 0.0;
  for (const auto& fx : fold_fixtures(seed)) {
    for (const auto& p : fx.points) {
      ++r.cases;
      try {
        const PairFields fields = pair_fields(*fx.pair, p);
        const HessianBlocks blocks = hessian_blocks(*fx.pair, p);
        std::optional<int> rank;
        for (int b = 0; b < 20; ++b) {
          const TangentBasis basis = random_tangent_basis(p, fields.vf, rng);
          const Eigen::MatrixXd M = assemble_M(blocks, basis.columns).M;
          const double scale = std::max(1.0, M.norm());
          const int this_rank = M.rows() == 0 ? 0 : rank_with_gap(M, FoldOptions{}.tol_fold).rank;
          if (rank && *rank != this_rank) ++rank_changes;
          rank = this_rank;
          const Eigen::Index m = M.rows();
          Eigen::MatrixXd A(m, m);
          for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) A(i, j) = gauss(rng);
          const Eigen::MatrixXd lhs = assemble_M(blocks, basis.columns * A.cast<Complex>()).M;
          const Eigen::MatrixXd rhs = A.transpose() * M * A;
          const double err = m == 0 ? 0.0 : (lhs - rhs).norm() / std::max(scale, rhs.norm());
          worst = std::max(worst, err);
          if (!(err <= 1e-10)) ++congruence_failures;
        }
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  r.worst = worst;
  r.passed = rank_changes == 0 && congruence_failures == 0 && errors == 0;
  r.summary = std::to_string(r.cases) + " points x 20 bases: " + std::to_string(rank_changes) +
              " rank changes, max relative congruence error " + fmt(worst) + " (tol 1e-10)";
  r.details = Json{{"rank_changes", rank_changes}, {"congruence_failures", congruence_failures},
                   {"max_congruence_error", worst}, {"errors", errors}};
  return r;
}

// ---------------------------------------------------------------- 9

SuiteResult suite_newton(std::uint64_t seed) {
  SuiteResult r = make_result(9, "newton");
  Rng rng(seed);
  long vertex_mismatches = 0, face_mismatches = 0, homogeneity_failures = 0;
  for (int c = 0; c < 100; ++c) {
    const int count = uniform_int(rng, 1, 12);
    std::set<LatticePoint> pts;
    while (static_cast<int>(pts.size()) < count)
      pts.insert({uniform_int(rng, 0, 8), uniform_int(rng, 0, 8)});
    std::vector<MixedMonomial> terms;
    for (const auto& e : pts) {
      MixedMonomial m{random_coeff(rng), {0, 0}, {0, 0}};
      for (int j = 0; j < 2; ++j) {
        const int a = uniform_int(rng, 0, static_cast<int>(e[static_cast<std::size_t>(j)]));
        m.nu[static_cast<std::size_t>(j)] = a;
        m.mu[static_cast<std::size_t>(j)] = static_cast<int>(e[static_cast<std::size_t>(j)]) - a;
      }
      terms.push_back(std::move(m));
    }
    const MixedPolynomial f = MixedPolynomial::from_terms(2, terms);
    ++r.cases;
    // Brute force: argmin sets of l_w over a weight grid fine enough to hit
    // every edge normal and every vertex cone of supports in [0, 8]^2.
    std::set<LatticePoint> brute_vertices;
    std::set<std::vector<LatticePoint>> brute_faces;
    for (std::int64_t a = 1; a <= 20; ++a)
      for (std::int64_t b = 1; b <= 20; ++b) {
        std::int64_t best = INT64_MAX;
        std::vector<LatticePoint> arg;
        for (const auto& e : pts) {
          const std::int64_t l = a * e[0] + b * e[1];
          if (l < best) {
            best = l;
            arg.clear();
          }
          if (l == best) arg.push_back(e);
        }
        if (arg.size() == 1) brute_vertices.insert(arg.front());
        brute_faces.insert(arg);
      }
    const NewtonData nd = newton_data(f);
    const std::set<LatticePoint> got(nd.vertices.begin(), nd.vertices.end());
    if (got != brute_vertices) ++vertex_mismatches;
    std::set<std::vector<LatticePoint>> got_faces;
    for (const auto& face : nd.compact_faces) {
      got_faces.insert(face.points);
      const Face again = face_and_degree(f, face.weight);
      if (again.points != face.points || again.degree != face.degree) ++face_mismatches;
    }
    if (got_faces != brute_faces) ++face_mismatches;
    for (int k = 0; k < 5; ++k) {
      const std::vector<std::int64_t> w{uniform_int(rng, 1, 9), uniform_int(rng, 1, 9)};
      const Face face = face_and_degree(f, w);
      const auto d = check_weighted(face_function(f, w), w, WeightKind::Radial);
      if (!d || d->d != face.degree) ++homogeneity_failures;
    }
  }
  r.passed = vertex_mismatches == 0 && face_mismatches == 0 && homogeneity_failures == 0;
  r.summary = std::to_string(r.cases) + " random supports: " + std::to_string(vertex_mismatches) +
              " vertex mismatches, " + std::to_string(face_mismatches) + " face mismatches, " +
              std::to_string(homogeneity_failures) + " face-function weight failures";
  r.details = Json{{"vertex_mismatches", vertex_mismatches}, {"face_mismatches", face_mismatches},
                   {"homogeneity_failures", homogeneity_failures}};
  return r;
}

// ---------------------------------------------------------------- 10

SuiteResult suite_determinism(std::uint64_t seed) {
  SuiteResult r = make_result(10, "determinism");
  const MfpmPair pair = fixture("z1^2+z2^2", "z1^2-z2^2");
  SearchConfig cfg;
  cfg.starts = 32;
  cfg.seed = seed;
  const std::string a = report::dump(report::singular(pair, 1.0, cfg));
  const std::string b = report::dump(report::singular(pair, 1.0, cfg));
  cfg.threads = 1;
  const std::string c = report::dump(report::singular(pair, 1.0, cfg));
  cfg.threads = 3;
  const std::string d = report::dump(report::singular(pair, 1.0, cfg));
  r.cases = 4;
  r.passed = a == b && a == c && a == d;
  r.summary = std::string("repeated runs ") + (a == b ? "identical" : "differ") + ", 1 vs 3 threads " +
              (c == d ? "identical" : "differ") + " (" + std::to_string(a.size()) + " bytes)";
  r.details = Json{{"bytes", a.size()}};
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = {
      {1, "wirtinger", "symbolic Wirtinger derivatives vs finite differences"},
      {2, "euler", "Euler identity for holomorphic weighted-homogeneous polynomials"},
      {3, "polar-action", "polar action identity under the torus flow"},
      {4, "prop2-equivalence", "real-dependence verdict vs finite-difference Jacobian rank"},
      {5, "prop3-equivalence", "complex-dependence verdict vs real-dependence verdict"},
      {6, "singular-locus", "search recovers the known singular circles"},
      {7, "fold-consistency", "fold verdict vs finite-difference restricted Hessian"},
      {8, "basis-invariance", "rank of M and congruence under change of tangent basis"},
      {9, "newton", "Newton vertices and faces vs brute-force weight enumeration"},
      {10, "determinism", "singular-point search output is reproducible"},
  };
  return catalog;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  static const std::map<std::string, std::function<SuiteResult(std::uint64_t)>> table = {
      {"wirtinger", suite_wirtinger},
      {"euler", suite_euler},
      {"polar-action", suite_polar_action},
      {"prop2-equivalence", suite_prop2},
      {"prop3-equivalence", suite_prop3},
      {"singular-locus", suite_singular_locus},
      {"fold-consistency", suite_fold},
      {"basis-invariance", suite_basis},
      {"newton", suite_newton},
      {"determinism", suite_determinism},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'", "unknown_suite");
  return it->second(seed);
}

}  // namespace milnor
