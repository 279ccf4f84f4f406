#include "reports.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lattice.hpp"
#include "linalg.hpp"
#include "oracle.hpp"

namespace milnor::report {
namespace {

Json header(const char* command) { return Json{{"schema", kSchema}, {"command", command}}; }

Json lattice_json(std::span<const LatticePoint> pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<std::vector<std::int64_t>> radial_positive_weight(const MixedPolynomial& f) {
  IntMatrix zero;
  const IntVector e0 = to_big(support_points(f).front());
  for (const auto& sp : support_points(f)) {
    IntVector row = to_big(sp);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= e0[j];
    zero.push_back(std::move(row));
  }
  const auto w = strictly_positive_weight({}, zero, f.nvars());
  if (!w) return std::nullopt;
  return to_int64(*w);
}

Json tolerance_json(const FoldOptions& fold) {
  return Json{{"dependence", fold.tol_dependence},
              {"fold", fold.tol_fold},
              {"zero_set", kZeroSetTol},
              {"oracle_jacobian_rank", oracle::kJacobianRankTol},
              {"oracle_hessian_regular", oracle::kHessianRegularTol},
              {"oracle_jacobian_step", oracle::kJacobianStep},
              {"oracle_hessian_step", oracle::kHessianStep}};
}

Json witness_json(const WitnessResult& r) {
  Json j{{"status", r.point ? "witness_found" : "no_witness_inconclusive"},
         {"best_residual", r.best_residual},
         {"starts", r.starts_used}};
  j["point"] = r.point ? vector_json(*r.point) : Json(nullptr);
  return j;
}

Json weights_block(const MfpmPair& pair) {
  Json j;
  j["f"] = pair.weight_f() ? weight_json(*pair.weight_f()) : Json(nullptr);
  j["g"] = pair.weight_g() ? weight_json(*pair.weight_g()) : Json(nullptr);
  j["w_f_sign"] = pair.weight_f() ? Json(weight_sign_name(weight_sign(pair.weight_f()->w))) : Json(nullptr);
  j["w_g_sign"] = pair.weight_g() ? Json(weight_sign_name(weight_sign(pair.weight_g()->w))) : Json(nullptr);
  j["s"] = pair.s() ? Json(pair.s()->str()) : Json(nullptr);
  j["s_value"] = pair.s() ? Json(pair.s_value()) : Json(nullptr);
  j["radially_compatible"] = pair.radially_compatible();
  j["polar_criterion"] = Json{{"valid", pair.polar_criterion_valid()}, {"reason", pair.polar_unavailable_reason()}};
  return j;
}

Json polar_json(const PolarReport& r) {
  Json j = dependence_json(r.dependence);
  j["residual"] = r.residual;
  j["relative_residual"] = r.relative_residual;
  return j;
}

Json hessian_oracle_json(const oracle::HessianVerdict& v) {
  return Json{{"H", matrix_json(v.H)},
              {"eigenvalues", v.eigenvalues},
              {"min_abs_eigenvalue", v.min_abs_eigenvalue},
              {"spectral_norm", v.spectral_norm},
              {"nondegenerate", v.nondegenerate},
              {"rank", v.rank.rank},
              {"gap", v.rank.gap},
              {"step", oracle::kHessianStep}};
}

Json checked_fold_json(const CheckedFold& c) {
  Json j;
  if (c.fold) {
    const FoldReport& r = *c.fold;
    j["verdict"] = fold_verdict_name(r.verdict);
    j["M"] = matrix_json(r.M);
    j["eigenvalues"] = r.eigenvalues;
    j["min_abs_eigenvalue"] = r.min_abs_eigenvalue;
    j["spectral_norm"] = r.spectral_norm;
    j["threshold"] = r.threshold;
    j["asymmetry"] = r.asymmetry;
    j["degenerate_dimension"] = r.degenerate_dimension;
    j["oracle_agreement"] = r.oracle_agreement ? Json(*r.oracle_agreement) : Json(nullptr);
    Json trail = Json::array();
    for (const auto& t : r.trail) trail.push_back(Json{{"check", t.check}, {"ok", t.ok}, {"detail", t.detail}});
    j["trail"] = std::move(trail);
  } else {
    j["verdict"] = nullptr;
    j["error"] = Json{{"code", c.error_code}, {"reason", c.error_reason}, {"message", c.error_message}};
  }
  if (c.oracle)
    j["oracle"] = hessian_oracle_json(*c.oracle);
  else
    j["oracle"] = Json{{"error", c.oracle_error.empty() ? "unavailable" : c.oracle_error}};
  return j;
}

Json goodness_json(const GoodnessProbe& g) {
  Json j{{"status", g.status}, {"radii", g.radii}, {"best_sigma", g.best_sigma}};
  j["witness"] = g.witness ? vector_json(g.witness->p) : Json(nullptr);
  return j;
}

}  // namespace

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json vector_json(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(complex_json(c));
  return a;
}

Json polynomial_json(const MixedPolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json{{"coeff", complex_json(t.coeff)}, {"nu", t.nu}, {"mu", t.mu}});
  return Json{{"n", f.nvars()}, {"expression", f.to_string()}, {"terms", std::move(terms)}};
}

Json weight_json(const WeightType& wt) {
  return Json{{"w", wt.w}, {"d", wt.d}, {"kind", weight_kind_name(wt.kind)}, {"degree_positive", wt.degree_positive()}};
}

Json dependence_json(const DependenceReport& d) {
  return Json{{"sigma", d.sigma}, {"dependent", d.dependent}, {"tol", d.tol_used}, {"indeterminate", d.indeterminate}};
}

Json analyze(const MixedPolynomial& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "polynomial is zero");
  Json j = header("analyze");
  j["polynomial"] = polynomial_json(f);
  j["holomorphic"] = f.is_holomorphic();
  j["total_degree"] = f.total_degree();
  for (const WeightKind kind : {WeightKind::Radial, WeightKind::Polar}) {
    Json block;
    Json lattice = Json::array();
    for (const auto& wt : detect_weights(f, kind)) lattice.push_back(weight_json(wt));
    block["lattice"] = std::move(lattice);
    std::optional<std::vector<std::int64_t>> w;
    if (kind == WeightKind::Radial) {
      w = radial_positive_weight(f);
    } else {
      const MixedPolynomial one[] = {f};
      w = common_positive_weight(one, false);
    }
    if (w) {
      const auto d = check_weighted(f, *w, kind);
      block["positive_weight"] = weight_json(WeightType{*w, d->d, kind});
    } else {
      block["positive_weight"] = nullptr;
    }
    j[weight_kind_name(kind)] = std::move(block);
  }

  Json euler{{"applicable", false}};
  const auto w = f.is_holomorphic() ? radial_positive_weight(f) : std::nullopt;
  if (w) {
    const std::int64_t d = check_weighted(f, *w, WeightKind::Radial)->d;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const DerivativeTable table(f);
    double worst = 0.0;
    const int samples = 8;
    for (int k = 0; k < samples; ++k) {
      ComplexVector p(static_cast<std::size_t>(f.nvars()));
      for (auto& c : p) c = Complex(gauss(rng), gauss(rng));
      const FirstJet jet = table.first(p);
      Complex sum = static_cast<double>(d) * jet.value;
      for (std::size_t i = 0; i < p.size(); ++i) sum -= static_cast<double>((*w)[i]) * p[i] * jet.dz[i];
      worst = std::max(worst, std::abs(sum) / (1.0 + std::abs(jet.value)));
    }
    euler = Json{{"applicable", true},  {"weight", *w},           {"degree", d}, {"points", samples},
                 {"seed", seed},        {"max_relative_residual", worst}, {"passes", worst <= 1e-10}};
  }
  j["euler"] = std::move(euler);
  return j;
}

Json newton(const MixedPolynomial& f, const NewtonQuery& query) {
  std::vector<std::vector<std::int64_t>> extra;
  if (query.weight) extra.push_back(*query.weight);
  if (query.weight) (void)face_and_degree(f, *query.weight);  // validates before the heavy work
  const NewtonData nd = newton_data(f, extra);
  Json j = header("newton");
  j["polynomial"] = polynomial_json(f);
  j["support"] = lattice_json(nd.support);
  j["vertices"] = lattice_json(nd.vertices);
  Json faces = Json::array();
  for (const auto& face : nd.compact_faces)
    faces.push_back(Json{{"points", lattice_json(face.points)},
                         {"weight", face.weight},
                         {"degree", face.degree},
                         {"dim", face.dim},
                         {"face_function", face_function(f, face.weight).to_string()}});
  j["faces"] = std::move(faces);
  if (query.weight) {
    const Face face = face_and_degree(f, *query.weight);
    const MixedPolynomial fw = face_function(f, *query.weight);
    const auto radial = check_weighted(fw, *query.weight, WeightKind::Radial);
    Json q{{"weight", *query.weight},
           {"face", lattice_json(face.points)},
           {"degree", face.degree},
           {"dim", face.dim},
           {"face_function", fw.to_string()},
           {"radially_homogeneous", radial.has_value() && radial->d == face.degree}};
    q["witness"] = Json{{"critical_on_zero_fiber", witness_json(degeneracy_witness(f, *query.weight, false, query.witness))},
                        {"critical_anywhere", witness_json(degeneracy_witness(f, *query.weight, true, query.witness))},
                        {"seed", query.witness.seed},
                        {"budget", query.witness.budget}};
    j["query"] = std::move(q);
  }
  return j;
}

Json singular(const MfpmPair& pair, double radius, const SearchConfig& config) {
  const SingularLocusSample sample = find_singular_points(pair, radius, config);
  Json j = header("singular");
  j["f"] = pair.f().to_string();
  j["g"] = pair.g().to_string();
  j["n"] = pair.nvars();
  j["radius"] = radius;
  j["weights"] = weights_block(pair);
  j["config"] = Json{{"starts", config.starts},
                     {"max_iters", config.max_iters},
                     {"tol_singular", config.tol_singular},
                     {"dedup_distance", config.dedup_distance},
                     {"seed", config.seed},
                     {"classify", config.classify}};
  j["tolerances"] = tolerance_json(config.fold);
  j["descent_objective"] = sample.polar_objective ? "complex_dependence" : "real_dependence";
  Json points = Json::array();
  for (const auto& sp : sample.points) {
    Json p{{"point", vector_json(sp.point.p)},
           {"objective", sp.objective},
           {"start", sp.start},
           {"orbit", sp.orbit},
           {"real_dependence", dependence_json(sp.general)}};
    p["complex_dependence"] = sp.polar ? polar_json(*sp.polar) : Json(nullptr);
    p["oracle"] = Json{{"rank", sp.jacobian.rank.rank},
                       {"gap", sp.jacobian.rank.gap},
                       {"step", sp.jacobian.step},
                       {"sigma", sp.jacobian.rank.sigma},
                       {"agreement", sp.jacobian.deficient == sp.general.dependent}};
    p["fold"] = sp.fold ? checked_fold_json(*sp.fold) : Json(nullptr);
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  j["orbit_count"] = sample.orbit_count;
  j["starts_run"] = sample.starts_run;
  j["starts_on_barrier"] = sample.starts_on_barrier;
  j["rejected"] = sample.rejected;
  Json warnings = Json::array();
  if (sample.starts_on_barrier == sample.starts_run) warnings.push_back("all_starts_near_K_fg");
  j["warnings"] = std::move(warnings);
  return j;
}

Json classify(const MfpmPair& pair, const SpherePoint& p, const ClassifyOptions& options) {
  Json j = header("classify");
  j["f"] = pair.f().to_string();
  j["g"] = pair.g().to_string();
  j["radius"] = p.radius;
  j["point"] = vector_json(p.p);
  j["weights"] = weights_block(pair);
  j["tolerances"] = tolerance_json(options.fold);
  j["ok"] = true;

  DependenceReport general;
  try {
    general = mfpm_singular_general(pair, p, options.fold.tol_dependence);
  } catch (const Error& e) {
    j["ok"] = false;
    j["error"] = error(e)["error"];
    return j;
  }
  j["real_dependence"] = dependence_json(general);
  try {
    const auto jv = oracle::jacobian_verdict(pair.f(), pair.g(), oracle::SphereChart(p));
    j["jacobian_oracle"] = Json{{"rank", jv.rank.rank},
                                {"gap", jv.rank.gap},
                                {"step", jv.step},
                                {"sigma", jv.rank.sigma},
                                {"deficient", jv.deficient},
                                {"agreement", jv.deficient == general.dependent}};
  } catch (const Error& e) {
    j["jacobian_oracle"] = Json{{"error", e.reason()}};
  }
  j["verdict"] = general.dependent ? "singular" : "regular";

  if (options.check_goodness) {
    j["goodness"] = Json{{"f", goodness_json(probe_goodness(pair.f(), p.radius, 16, options.seed))},
                         {"g", goodness_json(probe_goodness(pair.g(), p.radius, 16, options.seed))}};
  }

  if (!pair.polar_criterion_valid()) {
    j["complex_dependence"] = nullptr;
    j["fold"] = nullptr;
    j["ok"] = false;
    j["error"] = Json{{"code", error_code_name(ErrorCode::HypothesisViolation)},
                      {"reason", pair.polar_unavailable_reason()},
                      {"message", "fold criterion unavailable for this pair: " + pair.polar_unavailable_reason()}};
    return j;
  }
  j["complex_dependence"] = polar_json(mfpm_singular_polar(pair, p, options.fold.tol_dependence));
  const CheckedFold checked = classify_checked(pair, p, options.fold);
  j["fold"] = checked_fold_json(checked);
  if (!checked.fold) {
    j["ok"] = false;
    j["error"] = Json{{"code", checked.error_code}, {"reason", checked.error_reason}, {"message", checked.error_message}};
    return j;
  }
  switch (checked.fold->verdict) {
    case FoldVerdict::Fold: j["verdict"] = "singular_fold"; break;
    case FoldVerdict::DegenerateSingular: j["verdict"] = "singular_degenerate"; break;
    case FoldVerdict::NotSingular: j["verdict"] = "regular"; break;
  }
  return j;
}

Json error(const Error& e) {
  return error(error_code_name(e.code()), e.reason(), e.what());
}

Json error(const std::string& code, const std::string& reason, const std::string& message) {
  Json j{{"schema", kSchema}, {"ok", false}};
  j["error"] = Json{{"code", code}, {"reason", reason}, {"message", message}};
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace milnor::report
