#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "criteria.hpp"

namespace milnor {

// Real basis of T_p F_f = { v : Re<v, p> = Re<v, v_f(p)> = 0 }, orthonormal
// as vectors of R^{2n}. Columns are complex n-vectors.
struct TangentBasis {
  Eigen::MatrixXcd columns;  // n x (2n - 2)
  SpherePoint anchor;
  ComplexVector vf;
};

// Throws HypothesisViolation ("phi_f_singular_at_p") when p and v_f are
// R-dependent.
TangentBasis tangent_basis(const SpherePoint& p, const ComplexVector& vf);
// tangent_basis followed by a random orthogonal change of basis.
TangentBasis random_tangent_basis(const SpherePoint& p, const ComplexVector& vf, std::mt19937_64& rng);

// Wirtinger Hessian blocks of F = -i (log g - s log f) at p:
// zz(j,k) = d2F/dz_j dz_k, zzbar(j,k) = d2F/dz_j dzbar_k,
// zbarz(j,k) = d2F/dzbar_j dz_k, zbarzbar(j,k) = d2F/dzbar_j dzbar_k.
struct HessianBlocks {
  Eigen::MatrixXcd zz, zzbar, zbarz, zbarzbar;
};

HessianBlocks hessian_blocks(const MfpmPair& pair, const SpherePoint& p);

struct AssembledMatrix {
  Eigen::MatrixXd M;  // symmetrised
  double asymmetry = 0.0;  // ||M - M^T|| / ||M|| before symmetrising
};

// M = Re(V^T Hzz V) + Re(V^T Hzzbar conj(V)) + Re(conj(V)^T Hzbarz V)
//   + Re(conj(V)^T Hzbarzbar conj(V))
AssembledMatrix assemble_M(const HessianBlocks& blocks, const Eigen::MatrixXcd& V);

enum class FoldVerdict { Fold, DegenerateSingular, NotSingular };
const char* fold_verdict_name(FoldVerdict v);

struct FoldOptions {
  double tol_fold = 1e-6;
  double tol_dependence = kDefaultDependenceTol;
};

struct TrailEntry {
  std::string check;
  bool ok = false;
  std::string detail;
};

struct FoldReport {
  Eigen::MatrixXd M;
  std::vector<double> eigenvalues;  // ascending
  double min_abs_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  double threshold = 0.0;
  double asymmetry = 0.0;
  FoldVerdict verdict = FoldVerdict::NotSingular;
  bool degenerate_dimension = false;  // n = 1: M is 0 x 0
  std::optional<bool> oracle_agreement;
  DependenceReport general;
  std::optional<PolarReport> polar;
  std::vector<TrailEntry> trail;
};

// Throws HypothesisViolation for pairs without valid polar data and
// PointOnZeroSet for p on K_fg.
FoldReport classify_fold(const MfpmPair& pair, const SpherePoint& p, const FoldOptions& options = {});

// Fold iff min |eig| > tol * max(1, ||M||).
FoldVerdict fold_verdict_from_matrix(const Eigen::MatrixXd& M, double tol, std::vector<double>* eigenvalues = nullptr,
                                     double* min_abs = nullptr, double* spectral = nullptr);

}  // namespace milnor
