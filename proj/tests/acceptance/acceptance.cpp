// Acceptance runner: one PASS/FAIL line per criterion. Each suite reports its
// own verdict; the thresholds below are checked again against the suite's
// numbers so that a change in a suite cannot silently loosen a criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "suites.hpp"

namespace {

using milnor::SuiteResult;
using Json = nlohmann::json;

struct Check {
  int criterion;
  const char* suite;
  std::function<std::string(const SuiteResult&)> extra;  // empty string = fine
};

std::string require(bool ok, const std::string& what) { return ok ? "" : what; }

double num(const Json& d, const char* key) { return d.at(key).get<double>(); }

const std::vector<Check>& checks() {
  static const std::vector<Check> list{
      {1, "wirtinger",
       [](const SuiteResult& r) {
         return require(r.cases >= 500 && num(r.details, "max_abs_error") <= 1e-6 && num(r.details, "step") == 1e-5,
                        "wirtinger error above 1e-6 or too few cases");
       }},
      {2, "euler",
       [](const SuiteResult& r) {
         return require(r.cases >= 100 && num(r.details, "max_relative_residual") <= 1e-10,
                        "Euler residual above 1e-10 (1 + |f|)");
       }},
      {3, "polar-action",
       [](const SuiteResult& r) {
         return require(r.cases >= 100 && num(r.details, "max_residual") <= 1e-10, "polar action residual above 1e-10");
       }},
      {4, "prop2-equivalence",
       [](const SuiteResult& r) {
         const double band = num(r.details, "band_cases");
         return require(r.details.at("pairs").size() >= 23 && r.cases >= 23000 &&
                            num(r.details, "hard_disagreements") == 0 && band < 0.01 * static_cast<double>(r.cases),
                        "hard disagreements, too many band cases or too few points");
       }},
      {5, "prop3-equivalence",
       [](const SuiteResult& r) {
         return require(num(r.details, "disagreements") == 0 && num(r.details, "max_relative_residual") <= 1e-8 &&
                            r.cases >= 1000 * static_cast<long>(r.details.at("pairs").size()),
                        "verdict disagreement or |v_g - s v_f| above 1e-8 |v_f|");
       }},
      {6, "singular-locus",
       [](const SuiteResult& r) {
         return require(num(r.details, "family_z1_zero") >= 1 && num(r.details, "family_z2_zero") >= 1 &&
                            num(r.details, "off_circles") == 0 && num(r.details, "regular_pair_points") == 0 &&
                            num(r.details, "seconds") < 60.0,
                        "circle family missed, stray point, or runtime above 60 s");
       }},
      {7, "fold-consistency",
       [](const SuiteResult& r) {
         return require(num(r.details, "mismatches") == 0 && num(r.details, "errors") == 0 &&
                            num(r.details, "max_conj_entry") <= 1e-10 && r.cases > 0,
                        "fold verdict differs from the finite-difference Hessian, or M != 0 for (z1, ~z1)");
       }},
      {8, "basis-invariance",
       [](const SuiteResult& r) {
         return require(num(r.details, "rank_changes") == 0 && num(r.details, "max_congruence_error") <= 1e-10,
                        "rank changed across bases or congruence error above 1e-10");
       }},
      {9, "newton",
       [](const SuiteResult& r) {
         return require(r.cases >= 100 && num(r.details, "vertex_mismatches") == 0 &&
                            num(r.details, "homogeneity_failures") == 0,
                        "vertex mismatch or face function not radially homogeneous");
       }},
      {10, "determinism", [](const SuiteResult&) { return std::string(); }},
  };
  return list;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : checks()) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    SuiteResult r;
    try {
      r = milnor::run_suite(c.suite);
      if (!r.passed) reason = "suite verdict: fail";
      const std::string extra = c.extra(r);
      if (!extra.empty()) reason += (reason.empty() ? "" : "; ") + extra;
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = reason.empty();
    failed += !ok;
    std::printf("%s criterion %2d %-18s %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.criterion, c.suite,
                ok ? r.summary.c_str() : reason.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks().size()) - failed, checks().size());
  return failed == 0 ? 0 : 1;
}
