#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polynomial.hpp"

namespace milnor {

// (Re v_1, Im v_1, ..., Re v_n, Im v_n). dot(realify u, realify v) = Re<u, v>.
std::vector<double> realify(std::span<const Complex> v);
ComplexVector complexify(std::span<const double> x);

// <a, b> = sum a_j conj(b_j)
Complex hermitian(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

Eigen::VectorXd to_eigen(std::span<const double> x);
Eigen::VectorXcd to_eigen(std::span<const Complex> v);
ComplexVector from_eigen(const Eigen::VectorXcd& v);

// Descending singular values (all min(rows, cols) of them).
std::vector<double> singular_values(const Eigen::MatrixXd& m);
std::vector<double> singular_values(const Eigen::MatrixXcd& m);

struct RankReport {
  int rank = 0;
  // sigma_r / sigma_{r+1}; +inf at full rank or for the zero matrix.
  double gap = 0.0;
  bool ill_conditioned = false;  // gap < 10
  std::vector<double> sigma;
};

// Numerical rank: number of sigma_i > tol * max(sigma_1, 1).
RankReport rank_with_gap(const Eigen::MatrixXd& m, double tol);

// Orthonormal basis (columns) of the orthogonal complement of span(cols) in
// R^dim. `cols` must be linearly independent.
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& cols);

}  // namespace milnor
