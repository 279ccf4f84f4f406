#include "lattice.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "error.hpp"

namespace milnor {

IntMatrix integer_kernel(const IntMatrix& rows, int n) {
  IntMatrix a = rows;
  for (const auto& r : a)
    if (static_cast<int>(r.size()) != n) throw Error(ErrorCode::DimensionMismatch, "row length differs from n");
  // u holds the column operations; column c of u is u[.][c].
  IntMatrix u(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto column_axpy = [&](int dst, int src, const BigInt& q) {  // col_dst -= q * col_src
    for (auto& r : a) r[dst] -= q * r[src];
    for (auto& r : u) r[dst] -= q * r[src];
  };
  auto column_swap = [&](int x, int y) {
    for (auto& r : a) std::swap(r[x], r[y]);
    for (auto& r : u) std::swap(r[x], r[y]);
  };

  int rank = 0;
  for (std::size_t i = 0; i < a.size() && rank < n; ++i) {
    for (;;) {
      int pivot = -1;
      for (int c = rank; c < n; ++c) {
        if (a[i][c] == 0) continue;
        if (pivot < 0 || abs(a[i][c]) < abs(a[i][pivot])) pivot = c;
      }
      if (pivot < 0) break;
      bool others = false;
      for (int c = rank; c < n; ++c) {
        if (c == pivot || a[i][c] == 0) continue;
        column_axpy(c, pivot, a[i][c] / a[i][pivot]);
        if (a[i][c] != 0) others = true;
      }
      if (!others) {
        column_swap(rank, pivot);
        ++rank;
        break;
      }
    }
  }
  IntMatrix basis;
  for (int c = rank; c < n; ++c) {
    IntVector v(n);
    for (int r = 0; r < n; ++r) v[r] = u[r][c];
    basis.push_back(make_primitive(std::move(v)));
  }
  return basis;
}

int integer_rank(const IntMatrix& rows, int n) {
  return n - static_cast<int>(integer_kernel(rows, n).size());
}

IntVector make_primitive(IntVector v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::Numeric, "integer does not fit in 64 bits");
  return static_cast<std::int64_t>(x);
}

std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int64(x));
  return out;
}

IntVector to_big(const std::vector<std::int64_t>& v) { return IntVector(v.begin(), v.end()); }
IntVector to_big(const std::vector<int>& v) { return IntVector(v.begin(), v.end()); }

std::optional<std::vector<Rational>> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                         int nvars) {
  const int m = static_cast<int>(constraints.size());
  int slacks = 0;
  for (const auto& c : constraints) slacks += c.equality ? 0 : 1;
  // Columns: y (nvars) | slacks | artificials (m) | rhs
  const int ncols = nvars + slacks + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1, 0));
  std::vector<int> basis(m);
  int slack_col = nvars;
  for (int i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    if (static_cast<int>(c.coeffs.size()) != nvars)
      throw Error(ErrorCode::DimensionMismatch, "constraint length differs from variable count");
    for (int j = 0; j < nvars; ++j) t[i][j] = c.coeffs[j];
    if (!c.equality) t[i][slack_col++] = -1;
    t[i][ncols] = c.rhs;
    if (t[i][ncols] < 0)
      for (auto& x : t[i]) x = -x;
    t[i][nvars + slacks + i] = 1;
    basis[i] = nvars + slacks + i;
  }
  // Phase-one objective: minimise the sum of artificials. cost[j] is the
  // reduced cost of column j.
  std::vector<Rational> cost(ncols + 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= ncols; ++j)
      if (j < nvars + slacks || j == ncols) cost[j] -= t[i][j];

  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][ncols] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase one
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (int j = 0; j <= ncols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  if (cost[ncols] != 0) return std::nullopt;  // -(sum of artificials) at optimum
  std::vector<Rational> y(nvars, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < nvars) y[basis[i]] = t[i][ncols];
  return y;
}

std::optional<IntVector> strictly_positive_weight(const IntMatrix& strict, const IntMatrix& zero, int n) {
  // w = 1 + y with y >= 0.
  std::vector<LinearConstraint> cons;
  auto add = [&](const IntVector& d, bool eq) {
    LinearConstraint c;
    c.equality = eq;
    BigInt sum = 0;
    for (int j = 0; j < n; ++j) {
      c.coeffs.emplace_back(d[j]);
      sum += d[j];
    }
    c.rhs = Rational(eq ? BigInt(0) : BigInt(1)) - Rational(sum);
    cons.push_back(std::move(c));
  };
  for (const auto& d : strict) add(d, false);
  for (const auto& e : zero) add(e, true);
  auto y = find_feasible_point(cons, n);
  if (!y) return std::nullopt;
  BigInt lcm = 1;
  for (const auto& v : *y) {
    const BigInt den = denominator(v);
    lcm = lcm / gcd(lcm, den) * den;
  }
  IntVector w(n);
  for (int j = 0; j < n; ++j) {
    const Rational wj = (*y)[j] + 1;
    w[j] = numerator(wj) * (lcm / denominator(wj));
  }
  return make_primitive(std::move(w));
}

}  // namespace milnor
