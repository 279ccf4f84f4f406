#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "error.hpp"
#include "lattice.hpp"

namespace milnor {
namespace {

IntVector exponent_vector(const MixedMonomial& m, WeightKind kind) {
  IntVector e(m.nu.size());
  for (std::size_t j = 0; j < m.nu.size(); ++j)
    e[j] = kind == WeightKind::Radial ? m.nu[j] + m.mu[j] : m.nu[j] - m.mu[j];
  return e;
}

// Rows e_t - e_0 over all terms t.
void append_difference_rows(const MixedPolynomial& f, WeightKind kind, IntMatrix& rows) {
  const auto& terms = f.terms();
  if (terms.empty()) return;
  const IntVector base = exponent_vector(terms.front(), kind);
  for (std::size_t t = 1; t < terms.size(); ++t) {
    IntVector e = exponent_vector(terms[t], kind);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] -= base[j];
    if (std::any_of(e.begin(), e.end(), [](const BigInt& x) { return x != 0; })) rows.push_back(std::move(e));
  }
}

void require_nonzero(const MixedPolynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no weighted degree");
}

}  // namespace

const char* weight_kind_name(WeightKind kind) { return kind == WeightKind::Radial ? "radial" : "polar"; }

WeightSign weight_sign(std::span<const std::int64_t> w) {
  if (!w.empty() && std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x > 0; }))
    return WeightSign::StrictlyPositive;
  if (!w.empty() && std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x < 0; }))
    return WeightSign::StrictlyNegative;
  return WeightSign::Mixed;
}

const char* weight_sign_name(WeightSign sign) {
  switch (sign) {
    case WeightSign::StrictlyPositive: return "strictly_positive";
    case WeightSign::StrictlyNegative: return "strictly_negative";
    case WeightSign::Mixed: return "mixed";
  }
  return "mixed";
}

std::int64_t monomial_degree(const MixedMonomial& m, std::span<const std::int64_t> w, WeightKind kind) {
  if (w.size() != m.nu.size()) throw Error(ErrorCode::DimensionMismatch, "weight length differs from n");
  std::int64_t d = 0;
  for (std::size_t j = 0; j < w.size(); ++j)
    d += w[j] * (kind == WeightKind::Radial ? m.nu[j] + m.mu[j] : m.nu[j] - m.mu[j]);
  return d;
}

std::optional<WeightDegree> check_weighted(const MixedPolynomial& f, std::span<const std::int64_t> w,
                                           WeightKind kind) {
  require_nonzero(f);
  if (static_cast<int>(w.size()) != f.nvars())
    throw Error(ErrorCode::DimensionMismatch, "weight length differs from variable count");
  const std::int64_t d = monomial_degree(f.terms().front(), w, kind);
  for (const auto& t : f.terms())
    if (monomial_degree(t, w, kind) != d) return std::nullopt;
  return WeightDegree{d, d > 0};
}

std::vector<WeightType> detect_weights(const MixedPolynomial& f, WeightKind kind) {
  require_nonzero(f);
  const int n = f.nvars();
  IntMatrix rows;
  append_difference_rows(f, kind, rows);
  std::vector<WeightType> out;
  for (IntVector v : integer_kernel(rows, n)) {
    auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    if (first != v.end() && *first < 0)
      for (auto& x : v) x = -x;
    WeightType wt;
    wt.w = to_int64(v);
    wt.kind = kind;
    wt.d = monomial_degree(f.terms().front(), wt.w, kind);
    out.push_back(std::move(wt));
  }
  return out;
}

double polar_action_residual(const MixedPolynomial& f, std::span<const std::int64_t> w, std::int64_t d,
                             std::span<const Complex> p, double t) {
  if (static_cast<int>(w.size()) != f.nvars() || static_cast<int>(p.size()) != f.nvars())
    throw Error(ErrorCode::DimensionMismatch, "weight/point length differs from variable count");
  ComplexVector q(p.begin(), p.end());
  for (std::size_t j = 0; j < q.size(); ++j) q[j] *= std::polar(1.0, static_cast<double>(w[j]) * t);
  return std::abs(f.evaluate(q) - std::polar(1.0, static_cast<double>(d) * t) * f.evaluate(p));
}

double verify_polar_action(const MixedPolynomial& f, const WeightType& wt, std::span<const Complex> p, double t) {
  if (wt.kind != WeightKind::Polar)
    throw Error(ErrorCode::InvalidArgument, "polar action needs a polar weight type");
  const auto deg = check_weighted(f, wt.w, WeightKind::Polar);
  if (!deg || deg->d != wt.d)
    throw Error(ErrorCode::InvalidArgument, "polynomial is not polar weighted of type (" +
                                                weights_to_string(wt.w) + ";" + std::to_string(wt.d) + ")");
  return polar_action_residual(f, wt.w, wt.d, p, t);
}

std::optional<std::vector<std::int64_t>> common_positive_weight(std::span<const MixedPolynomial> polys,
                                                                bool also_radial) {
  if (polys.empty()) return std::nullopt;
  const int n = polys.front().nvars();
  IntMatrix rows;
  for (const auto& f : polys) {
    if (f.nvars() != n) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
    require_nonzero(f);
    append_difference_rows(f, WeightKind::Polar, rows);
    if (also_radial) append_difference_rows(f, WeightKind::Radial, rows);
  }
  const IntMatrix basis = integer_kernel(rows, n);
  const int k = static_cast<int>(basis.size());
  if (k == 0) return std::nullopt;

  // Small integer combinations first: they give the weights a reader would
  // write down. Ranked by (max entry, sum, lexicographic).
  std::optional<IntVector> best;
  auto better = [](const IntVector& a, const IntVector& b) {
    const BigInt ma = *std::max_element(a.begin(), a.end());
    const BigInt mb = *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma < mb;
    const BigInt sa = std::accumulate(a.begin(), a.end(), BigInt(0));
    const BigInt sb = std::accumulate(b.begin(), b.end(), BigInt(0));
    if (sa != sb) return sa < sb;
    return a < b;
  };
  if (k <= 4) {
    const int range = k <= 2 ? 6 : 3;
    std::vector<int> c(k, -range);
    for (;;) {
      IntVector w(n, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) w[j] += c[i] * basis[i][j];
      if (std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x > 0; })) {
        w = make_primitive(std::move(w));
        if (!best || better(w, *best)) best = w;
      }
      int i = 0;
      while (i < k && ++c[i] > range) c[i++] = -range;
      if (i == k) break;
    }
  }
  if (!best) {
    // Strictly positive w = B^T c with free c = c_plus - c_minus.
    std::vector<LinearConstraint> cons;
    for (int j = 0; j < n; ++j) {
      LinearConstraint lc;
      for (int i = 0; i < k; ++i) lc.coeffs.emplace_back(basis[i][j]);
      for (int i = 0; i < k; ++i) lc.coeffs.emplace_back(-basis[i][j]);
      lc.rhs = 1;
      cons.push_back(std::move(lc));
    }
    auto sol = find_feasible_point(cons, 2 * k);
    if (!sol) return std::nullopt;
    std::vector<Rational> w(n, 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < k; ++i) w[j] += ((*sol)[i] - (*sol)[k + i]) * Rational(basis[i][j]);
    BigInt lcm = 1;
    for (const auto& x : w) lcm = lcm / gcd(lcm, denominator(x)) * denominator(x);
    IntVector iw(n);
    for (int j = 0; j < n; ++j) iw[j] = numerator(w[j]) * (lcm / denominator(w[j]));
    best = make_primitive(std::move(iw));
  }
  return to_int64(*best);
}

std::string weights_to_string(std::span<const std::int64_t> w) {
  std::string s = "(";
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(w[j]);
  }
  return s + ")";
}

}  // namespace milnor
