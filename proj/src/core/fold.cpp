#include "fold.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "linalg.hpp"

namespace milnor {
namespace {

struct LogHessian {
  Eigen::MatrixXcd zz, zzbar, zbarz, zbarzbar;
};

// Second Wirtinger derivatives of log h from symbolic derivatives of h:
// (h h_ab - h_a h_b) / h^2.
LogHessian log_hessian(const DerivativeTable& table, const SpherePoint& p, const char* reason) {
  const SecondJet jet = table.second(p.p);
  require_off_zero_set(jet.first, table.polynomial().magnitude(p.p), reason);
  const Eigen::Index n = static_cast<Eigen::Index>(p.p.size());
  const Complex h = jet.first.value;
  const Complex h2 = h * h;
  const auto& dz = jet.first.dz;
  const auto& dzb = jet.first.dzbar;
  LogHessian out{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::size_t jk = static_cast<std::size_t>(j * n + k);
      const std::size_t kj = static_cast<std::size_t>(k * n + j);
      out.zz(j, k) = (h * jet.zz[jk] - dz[j] * dz[k]) / h2;
      out.zzbar(j, k) = (h * jet.zzbar[jk] - dz[j] * dzb[k]) / h2;
      out.zbarz(j, k) = (h * jet.zzbar[kj] - dzb[j] * dz[k]) / h2;
      out.zbarzbar(j, k) = (h * jet.zbarzbar[jk] - dzb[j] * dzb[k]) / h2;
    }
  return out;
}

Eigen::MatrixXd random_orthogonal(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
}

}  // namespace

const char* fold_verdict_name(FoldVerdict v) {
  switch (v) {
    case FoldVerdict::Fold: return "fold";
    case FoldVerdict::DegenerateSingular: return "degenerate_singular";
    case FoldVerdict::NotSingular: return "not_singular";
  }
  return "not_singular";
}

TangentBasis tangent_basis(const SpherePoint& p, const ComplexVector& vf) {
  const Eigen::Index n = static_cast<Eigen::Index>(p.p.size());
  if (static_cast<Eigen::Index>(vf.size()) != n) throw Error(ErrorCode::DimensionMismatch, "v_f length differs from n");
  const double nf = norm(vf);
  Eigen::MatrixXd normal(2 * n, 2);
  normal.col(0) = to_eigen(realify(p.p)) / p.radius;
  normal.col(1) = nf > 0.0 ? Eigen::VectorXd(to_eigen(realify(vf)) / nf) : Eigen::VectorXd::Zero(2 * n);
  const auto sigma = singular_values(normal);
  if (!(sigma.size() == 2 && sigma[1] > 1e-8))
    throw Error(ErrorCode::HypothesisViolation, "p and v_f(p) are R-dependent: phi_f is singular at p",
                "phi_f_singular_at_p");
  const Eigen::MatrixXd comp = orthonormal_complement(normal);
  TangentBasis basis{Eigen::MatrixXcd(n, comp.cols()), p, vf};
  for (Eigen::Index c = 0; c < comp.cols(); ++c)
    for (Eigen::Index j = 0; j < n; ++j) basis.columns(j, c) = Complex(comp(2 * j, c), comp(2 * j + 1, c));
  return basis;
}

TangentBasis random_tangent_basis(const SpherePoint& p, const ComplexVector& vf, std::mt19937_64& rng) {
  TangentBasis basis = tangent_basis(p, vf);
  const Eigen::Index m = basis.columns.cols();
  if (m > 0) basis.columns = basis.columns * random_orthogonal(m, rng).cast<Complex>();
  return basis;
}

HessianBlocks hessian_blocks(const MfpmPair& pair, const SpherePoint& p) {
  if (p.nvars() != pair.nvars()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from n");
  const double s = pair.s_value();
  const LogHessian lf = log_hessian(pair.f_table(), p, "point_on_K_f");
  const LogHessian lg = log_hessian(pair.g_table(), p, "point_on_K_g");
  const Complex minus_i(0.0, -1.0);
  return HessianBlocks{minus_i * (lg.zz - s * lf.zz), minus_i * (lg.zzbar - s * lf.zzbar),
                       minus_i * (lg.zbarz - s * lf.zbarz), minus_i * (lg.zbarzbar - s * lf.zbarzbar)};
}

AssembledMatrix assemble_M(const HessianBlocks& b, const Eigen::MatrixXcd& V) {
  const Eigen::Index n = b.zz.rows();
  if (V.rows() != n || b.zz.cols() != n || b.zzbar.rows() != n || b.zbarz.rows() != n || b.zbarzbar.rows() != n)
    throw Error(ErrorCode::DimensionMismatch, "Hessian blocks and basis dimensions differ");
  const Eigen::MatrixXcd Vc = V.conjugate();
  const Eigen::MatrixXcd sum = V.transpose() * b.zz * V + V.transpose() * b.zzbar * Vc +
                               Vc.transpose() * b.zbarz * V + Vc.transpose() * b.zbarzbar * Vc;
  AssembledMatrix out;
  const Eigen::MatrixXd M = sum.real();
  const double nm = M.norm();
  out.asymmetry = nm > 0.0 ? (M - M.transpose()).norm() / nm : 0.0;
  out.M = 0.5 * (M + M.transpose());
  return out;
}

FoldVerdict fold_verdict_from_matrix(const Eigen::MatrixXd& M, double tol, std::vector<double>* eigenvalues,
                                     double* min_abs, double* spectral) {
  std::vector<double> eig;
  if (M.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    eig.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  }
  double lo = INFINITY, hi = 0.0;
  for (double e : eig) {
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  if (eig.empty()) lo = 0.0;
  if (eigenvalues) *eigenvalues = eig;
  if (min_abs) *min_abs = lo;
  if (spectral) *spectral = hi;
  if (eig.empty()) return FoldVerdict::Fold;
  return lo > tol * std::max(1.0, hi) ? FoldVerdict::Fold : FoldVerdict::DegenerateSingular;
}

FoldReport classify_fold(const MfpmPair& pair, const SpherePoint& p, const FoldOptions& options) {
  FoldReport rep;
  if (!pair.polar_criterion_valid())
    throw Error(ErrorCode::HypothesisViolation,
                "fold criterion needs polar weights with strictly signed w_f, nonzero degrees and radial "
                "compatibility: " + pair.polar_unavailable_reason(),
                pair.polar_unavailable_reason());
  rep.trail.push_back({"polar_weights", true,
                       "w_f=" + weights_to_string(pair.weight_f()->w) + " d_f=" + std::to_string(pair.weight_f()->d) +
                           " d_g=" + std::to_string(pair.weight_g()->d) + " s=" + pair.s()->str()});

  const PairFields fields = pair_fields(pair, p);
  rep.trail.push_back({"off_K_fg", true, ""});

  rep.general = mfpm_singular_general(pair, p, options.tol_dependence);
  rep.polar = mfpm_singular_polar(pair, p, options.tol_dependence);
  const bool singular = rep.polar->dependence.dependent;
  rep.trail.push_back({"complex_dependence", singular, "sigma_2=" + std::to_string(rep.polar->dependence.sigma.back())});
  rep.trail.push_back({"real_dependence", rep.general.dependent,
                       "sigma_3=" + std::to_string(rep.general.sigma.back())});
  rep.trail.push_back({"criteria_agree", rep.general.dependent == singular, ""});
  if (!singular) {
    rep.verdict = FoldVerdict::NotSingular;
    return rep;
  }

  const TangentBasis basis = tangent_basis(p, fields.vf);
  rep.trail.push_back({"phi_f_regular_at_p", true, ""});
  const AssembledMatrix am = assemble_M(hessian_blocks(pair, p), basis.columns);
  rep.M = am.M;
  rep.asymmetry = am.asymmetry;
  rep.degenerate_dimension = rep.M.rows() == 0;
  rep.verdict = fold_verdict_from_matrix(rep.M, options.tol_fold, &rep.eigenvalues, &rep.min_abs_eigenvalue,
                                         &rep.spectral_norm);
  rep.threshold = options.tol_fold * std::max(1.0, rep.spectral_norm);
  rep.trail.push_back({"M_regular", rep.verdict == FoldVerdict::Fold,
                       rep.degenerate_dimension ? "dimension 0 (n = 1), vacuously regular" : ""});
  return rep;
}

}  // namespace milnor
