#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace milnor {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Coefficients smaller than this after merging are dropped.
inline constexpr double kMergeThreshold = 1e-14;

// c * z^nu * conj(z)^mu
struct MixedMonomial {
  Complex coeff;
  std::vector<int> nu;
  std::vector<int> mu;

  int holomorphic_degree() const;
  int antiholomorphic_degree() const;
};

// Sparse mixed polynomial in z_1..z_n and their conjugates. Terms are kept
// sorted by (nu, mu), pairwise distinct, with no zero coefficients. Variable
// indices in the C++ interface are 0-based.
class MixedPolynomial {
 public:
  explicit MixedPolynomial(int n);

  // Merges equal exponent keys and drops coefficients below kMergeThreshold.
  static MixedPolynomial from_terms(int n, std::span<const MixedMonomial> terms);
  static MixedPolynomial constant(int n, Complex c);
  static MixedPolynomial variable(int n, int j, bool conjugated);

  int nvars() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<MixedMonomial>& terms() const noexcept { return terms_; }

  Complex evaluate(std::span<const Complex> p) const;
  // Sum of |term(p)|; a scale for "is h(p) numerically zero" decisions.
  double magnitude(std::span<const Complex> p) const;

  // d/dz_j (conjugated = false) or d/d(conj z_j) (conjugated = true).
  MixedPolynomial wirtinger(int j, bool conjugated) const;
  // Coefficients conjugated, nu and mu swapped.
  MixedPolynomial conjugate() const;
  bool is_holomorphic() const;

  // Max over terms of |nu| + |mu|.
  int total_degree() const;

  MixedPolynomial operator+(const MixedPolynomial& other) const;
  MixedPolynomial operator-(const MixedPolynomial& other) const;
  MixedPolynomial operator*(const MixedPolynomial& other) const;
  MixedPolynomial operator*(Complex c) const;

  friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b);

  // Text in the polynomial grammar; parse(to_string()) reproduces the term
  // list exactly (coefficients are printed with round-trip precision).
  std::string to_string() const;

 private:
  void check_point(std::span<const Complex> p) const;

  int n_;
  std::vector<MixedMonomial> terms_;
};

// Values of h and all first-order Wirtinger partials at a point.
struct FirstJet {
  Complex value;
  ComplexVector dz;
  ComplexVector dzbar;
};

// Values of h, first and second Wirtinger partials at a point. Second-order
// blocks are row-major n x n: zz(j,k) = d^2h/dz_j dz_k, zzbar(j,k) =
// d^2h/dz_j dzbar_k, zbarzbar(j,k) = d^2h/dzbar_j dzbar_k.
struct SecondJet {
  FirstJet first;
  ComplexVector zz;
  ComplexVector zzbar;
  ComplexVector zbarzbar;
};

// Symbolic Wirtinger derivatives of a polynomial, computed once and evaluated
// many times.
class DerivativeTable {
 public:
  explicit DerivativeTable(const MixedPolynomial& h, bool with_second = false);

  const MixedPolynomial& polynomial() const noexcept { return h_; }
  int nvars() const noexcept { return h_.nvars(); }

  FirstJet first(std::span<const Complex> p) const;
  SecondJet second(std::span<const Complex> p) const;

 private:
  MixedPolynomial h_;
  std::vector<MixedPolynomial> dz_;
  std::vector<MixedPolynomial> dzbar_;
  std::vector<MixedPolynomial> zz_;
  std::vector<MixedPolynomial> zzbar_;
  std::vector<MixedPolynomial> zbarzbar_;
  bool has_second_;
};

}  // namespace milnor
