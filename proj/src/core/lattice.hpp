#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace milnor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // row-major

// Lattice basis of {w in Z^n : A w = 0}, via unimodular column elimination.
// Each basis vector is primitive. Empty when only w = 0 solves.
IntMatrix integer_kernel(const IntMatrix& rows, int n);

int integer_rank(const IntMatrix& rows, int n);

// v / gcd(|v_1|, ..., |v_n|); zero vector is returned unchanged.
IntVector make_primitive(IntVector v);

BigInt dot(const IntVector& a, const IntVector& b);

std::int64_t to_int64(const BigInt& x);
std::vector<std::int64_t> to_int64(const IntVector& v);
IntVector to_big(const std::vector<std::int64_t>& v);
IntVector to_big(const std::vector<int>& v);

// Feasibility LP over y >= 0: each constraint is coeffs . y (>= or ==) rhs.
// Exact rational phase-one simplex with Bland's rule.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
  bool equality = false;
};
std::optional<std::vector<Rational>> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                         int nvars);

// Strictly positive integer w with w . d >= 1 for every d in `strict` and
// w . e == 0 for every e in `zero`, or nothing if no strictly positive real
// solution exists. Result is primitive.
std::optional<IntVector> strictly_positive_weight(const IntMatrix& strict, const IntMatrix& zero, int n);

}  // namespace milnor
