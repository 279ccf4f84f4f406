#include "linalg.hpp"

#include <cmath>
#include <limits>

namespace milnor {

std::vector<double> realify(std::span<const Complex> v) {
  std::vector<double> x;
  x.reserve(2 * v.size());
  for (const auto& c : v) {
    x.push_back(c.real());
    x.push_back(c.imag());
  }
  return x;
}

ComplexVector complexify(std::span<const double> x) {
  ComplexVector v(x.size() / 2);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = Complex(x[2 * j], x[2 * j + 1]);
  return v;
}

Complex hermitian(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s(0.0, 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Eigen::VectorXd to_eigen(std::span<const double> x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

Eigen::VectorXcd to_eigen(std::span<const Complex> x) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

ComplexVector from_eigen(const Eigen::VectorXcd& v) { return ComplexVector(v.data(), v.data() + v.size()); }

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::vector<double> singular_values(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

RankReport rank_with_gap(const Eigen::MatrixXd& m, double tol) {
  RankReport r;
  r.sigma = singular_values(m);
  const double threshold = tol * std::max(r.sigma.empty() ? 0.0 : r.sigma.front(), 1.0);
  for (double s : r.sigma)
    if (s > threshold) ++r.rank;
  const double inf = std::numeric_limits<double>::infinity();
  if (r.rank == 0 || r.rank == static_cast<int>(r.sigma.size())) {
    r.gap = inf;
  } else {
    const double next = r.sigma[r.rank];
    r.gap = next > 0.0 ? r.sigma[r.rank - 1] / next : inf;
  }
  r.ill_conditioned = r.gap < 10.0;
  return r;
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& cols) {
  const Eigen::Index dim = cols.rows();
  const Eigen::Index k = cols.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  return q.rightCols(dim - k);
}

}  // namespace milnor
