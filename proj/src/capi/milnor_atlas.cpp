#include "milnor_atlas/milnor_atlas.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "error.hpp"
#include "parser.hpp"
#include "polynomial.hpp"
#include "reports.hpp"
#include "search.hpp"
#include "suites.hpp"

struct ma_polynomial {
  milnor::MixedPolynomial poly;
};

struct ma_options {
  double radius = 1.0;
  milnor::SearchConfig search;
  milnor::WitnessOptions witness;
  bool check_goodness = true;
  bool seed_given = false;
  std::optional<std::vector<std::int64_t>> weight;
  std::optional<milnor::ComplexVector> point;
};

namespace {

using milnor::Error;
using milnor::ErrorCode;
namespace report = milnor::report;

thread_local std::string last_error;

ma_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return MA_ERR_PARSE;
    case ErrorCode::InvalidArgument: return MA_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return MA_ERR_DIMENSION_MISMATCH;
    case ErrorCode::ZeroPolynomial: return MA_ERR_ZERO_POLYNOMIAL;
    case ErrorCode::PointOnZeroSet: return MA_ERR_POINT_ON_ZERO_SET;
    case ErrorCode::HypothesisViolation: return MA_ERR_HYPOTHESIS_VIOLATION;
    case ErrorCode::NotProportional: return MA_ERR_NOT_PROPORTIONAL;
    case ErrorCode::Numeric: return MA_ERR_NUMERIC;
    case ErrorCode::UnknownSuite: return MA_ERR_UNKNOWN_SUITE;
  }
  return MA_ERR_INTERNAL;
}

ErrorCode code_of_name(const std::string& name) {
  for (ErrorCode c : {ErrorCode::Parse, ErrorCode::InvalidArgument, ErrorCode::DimensionMismatch,
                      ErrorCode::ZeroPolynomial, ErrorCode::PointOnZeroSet, ErrorCode::HypothesisViolation,
                      ErrorCode::NotProportional, ErrorCode::Numeric, ErrorCode::UnknownSuite})
    if (name == milnor::error_code_name(c)) return c;
  return ErrorCode::Numeric;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ma_status fail(ma_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body; Error and other exceptions become a status, last_error and
// (when json != nullptr) an error report.
template <class Body>
ma_status guarded(char** json, Body&& body) {
  last_error.clear();
  if (json) *json = nullptr;
  try {
    return body();
  } catch (const Error& e) {
    if (json) *json = copy_string(report::dump(report::error(e)));
    return fail(status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    if (json) *json = copy_string(report::dump(report::error("internal", "", e.what())));
    return fail(MA_ERR_INTERNAL, e.what());
  }
}

ma_status null_argument(char** json, const char* what) {
  const std::string msg = std::string("null argument: ") + what;
  if (json) *json = copy_string(report::dump(report::error("invalid_argument", "null_argument", msg)));
  return fail(MA_ERR_INVALID_ARGUMENT, msg);
}

milnor::ComplexVector read_point(const double* point, std::size_t n) {
  milnor::ComplexVector p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = milnor::Complex(point[2 * j], point[2 * j + 1]);
  return p;
}

const ma_options& defaults_or(const ma_options* o) {
  static const ma_options defaults;
  return o ? *o : defaults;
}

}  // namespace

extern "C" {

const char* ma_version(void) { return "1.0.0"; }

const char* ma_status_name(ma_status status) {
  switch (status) {
    case MA_OK: return "ok";
    case MA_ERR_PARSE: return "parse_error";
    case MA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MA_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case MA_ERR_ZERO_POLYNOMIAL: return "zero_polynomial";
    case MA_ERR_POINT_ON_ZERO_SET: return "point_on_zero_set";
    case MA_ERR_HYPOTHESIS_VIOLATION: return "hypothesis_violation";
    case MA_ERR_NOT_PROPORTIONAL: return "not_proportional";
    case MA_ERR_NUMERIC: return "numeric_failure";
    case MA_ERR_UNKNOWN_SUITE: return "unknown_suite";
    case MA_ERR_VERIFICATION_FAILED: return "verification_failed";
    case MA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ma_last_error(void) { return last_error.c_str(); }

void ma_string_free(char* s) { std::free(s); }

ma_status ma_polynomial_parse(const char* text, int n, ma_polynomial** out) {
  if (!text || !out) return null_argument(nullptr, "text/out");
  *out = nullptr;
  return guarded(nullptr, [&] {
    *out = new ma_polynomial{milnor::parse_polynomial(text, n)};
    return MA_OK;
  });
}

ma_status ma_polynomial_parse_file(const char* content, ma_polynomial** out) {
  if (!content || !out) return null_argument(nullptr, "content/out");
  *out = nullptr;
  return guarded(nullptr, [&] {
    *out = new ma_polynomial{milnor::parse_polynomial_file(content)};
    return MA_OK;
  });
}

void ma_polynomial_free(ma_polynomial* f) { delete f; }

int ma_polynomial_nvars(const ma_polynomial* f) { return f ? f->poly.nvars() : 0; }

size_t ma_polynomial_term_count(const ma_polynomial* f) { return f ? f->poly.size() : 0; }

ma_status ma_polynomial_evaluate(const ma_polynomial* f, const double* point, size_t n, double* re, double* im) {
  if (!f || !point || !re || !im) return null_argument(nullptr, "f/point/re/im");
  return guarded(nullptr, [&] {
    if (n != static_cast<size_t>(f->poly.nvars()))
      throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(n) + " coordinates, polynomial has " +
                                                    std::to_string(f->poly.nvars()) + " variables");
    const milnor::Complex v = f->poly.evaluate(read_point(point, n));
    *re = v.real();
    *im = v.imag();
    return MA_OK;
  });
}

ma_status ma_polynomial_to_string(const ma_polynomial* f, char** out) {
  if (!f || !out) return null_argument(nullptr, "f/out");
  return guarded(nullptr, [&] {
    *out = copy_string(f->poly.to_string());
    return MA_OK;
  });
}

ma_options* ma_options_new(void) { return new (std::nothrow) ma_options(); }

void ma_options_free(ma_options* o) { delete o; }

ma_status ma_options_set_double(ma_options* o, const char* key, double value) {
  if (!o || !key) return null_argument(nullptr, "options/key");
  last_error.clear();
  const std::string k = key;
  if (k == "radius") o->radius = value;
  else if (k == "tol_dependence") o->search.fold.tol_dependence = value;
  else if (k == "tol_fold") o->search.fold.tol_fold = value;
  else if (k == "tol_singular") o->search.tol_singular = value;
  else if (k == "dedup_distance") o->search.dedup_distance = value;
  else return fail(MA_ERR_INVALID_ARGUMENT, "unknown option '" + k + "'");
  return MA_OK;
}

ma_status ma_options_set_int(ma_options* o, const char* key, int64_t value) {
  if (!o || !key) return null_argument(nullptr, "options/key");
  last_error.clear();
  const std::string k = key;
  auto as_int = [&](int& slot) {
    if (value < 0 || value > 1'000'000'000) return fail(MA_ERR_INVALID_ARGUMENT, "option '" + k + "' out of range");
    slot = static_cast<int>(value);
    return MA_OK;
  };
  if (k == "starts") return as_int(o->search.starts);
  if (k == "max_iters") return as_int(o->search.max_iters);
  if (k == "threads") return as_int(o->search.threads);
  if (k == "witness_budget") return as_int(o->witness.budget);
  if (k == "seed") {
    o->search.seed = static_cast<std::uint64_t>(value);
    o->witness.seed = static_cast<std::uint64_t>(value);
    o->seed_given = true;
    return MA_OK;
  }
  if (k == "classify") {
    o->search.classify = value != 0;
    return MA_OK;
  }
  if (k == "check_goodness") {
    o->check_goodness = value != 0;
    return MA_OK;
  }
  return fail(MA_ERR_INVALID_ARGUMENT, "unknown option '" + k + "'");
}

ma_status ma_options_set_weight(ma_options* o, const int64_t* w, size_t n) {
  if (!o || (!w && n)) return null_argument(nullptr, "options/weight");
  last_error.clear();
  o->weight = std::vector<std::int64_t>(w, w + n);
  return MA_OK;
}

ma_status ma_options_set_point(ma_options* o, const double* point, size_t n) {
  if (!o || (!point && n)) return null_argument(nullptr, "options/point");
  last_error.clear();
  o->point = read_point(point, n);
  return MA_OK;
}

ma_status ma_analyze(const ma_polynomial* f, const ma_options* o, char** json) {
  if (!json) return null_argument(nullptr, "json");
  if (!f) return null_argument(json, "f");
  return guarded(json, [&] {
    *json = copy_string(report::dump(report::analyze(f->poly, defaults_or(o).search.seed)));
    return MA_OK;
  });
}

ma_status ma_newton(const ma_polynomial* f, const ma_options* o, char** json) {
  if (!json) return null_argument(nullptr, "json");
  if (!f) return null_argument(json, "f");
  return guarded(json, [&] {
    const ma_options& opt = defaults_or(o);
    report::NewtonQuery q;
    q.weight = opt.weight;
    q.witness = opt.witness;
    *json = copy_string(report::dump(report::newton(f->poly, q)));
    return MA_OK;
  });
}

ma_status ma_singular(const ma_polynomial* f, const ma_polynomial* g, const ma_options* o, char** json) {
  if (!json) return null_argument(nullptr, "json");
  if (!f || !g) return null_argument(json, "f/g");
  return guarded(json, [&] {
    const ma_options& opt = defaults_or(o);
    const auto pair = milnor::MfpmPair::make(f->poly, g->poly);
    *json = copy_string(report::dump(report::singular(pair, opt.radius, opt.search)));
    return MA_OK;
  });
}

ma_status ma_classify(const ma_polynomial* f, const ma_polynomial* g, const ma_options* o, char** json) {
  if (!json) return null_argument(nullptr, "json");
  if (!f || !g) return null_argument(json, "f/g");
  return guarded(json, [&] {
    const ma_options& opt = defaults_or(o);
    if (!opt.point) throw Error(ErrorCode::InvalidArgument, "classify needs a point", "missing_point");
    const auto pair = milnor::MfpmPair::make(f->poly, g->poly);
    if (opt.point->size() != static_cast<std::size_t>(pair.nvars()))
      throw Error(ErrorCode::DimensionMismatch, "point length differs from the variable count", "point_length");
    const auto p = milnor::SpherePoint::make(*opt.point, opt.radius);
    report::ClassifyOptions co;
    co.fold = opt.search.fold;
    co.check_goodness = opt.check_goodness;
    co.seed = opt.search.seed;
    const report::Json r = report::classify(pair, p, co);
    *json = copy_string(report::dump(r));
    if (r.value("ok", false)) return MA_OK;
    const report::Json& err = r.at("error");
    return fail(status_of(code_of_name(err.value("code", ""))), err.value("message", ""));
  });
}

ma_status ma_verify(const char* suite, const ma_options* o, char** json) {
  if (!json) return null_argument(nullptr, "json");
  if (!suite) return null_argument(json, "suite");
  return guarded(json, [&] {
    const bool custom_seed = o && o->seed_given;
    std::vector<std::string> names;
    if (std::string(suite) == "all")
      for (const auto& s : milnor::suite_catalog()) names.push_back(s.name);
    else
      names.push_back(suite);
    report::Json results = report::Json::array();
    bool all_passed = true;
    for (const auto& name : names) {
      const milnor::SuiteResult r = custom_seed ? milnor::run_suite(name, o->search.seed) : milnor::run_suite(name);
      all_passed = all_passed && r.passed;
      results.push_back(report::Json{{"criterion", r.criterion},
                                     {"suite", r.name},
                                     {"passed", r.passed},
                                     {"cases", r.cases},
                                     {"worst", r.worst},
                                     {"summary", r.summary},
                                     {"details", r.details}});
    }
    report::Json j{{"schema", report::kSchema}, {"command", "verify"}, {"suite", suite}, {"passed", all_passed}};
    j["results"] = std::move(results);
    *json = copy_string(report::dump(j));
    if (all_passed) return MA_OK;
    return fail(MA_ERR_VERIFICATION_FAILED, std::string("suite '") + suite + "' failed");
  });
}

ma_status ma_suite_list(char** json) {
  if (!json) return null_argument(nullptr, "json");
  return guarded(json, [&] {
    report::Json a = report::Json::array();
    for (const auto& s : milnor::suite_catalog())
      a.push_back(report::Json{{"criterion", s.criterion}, {"name", s.name}, {"description", s.description}});
    *json = copy_string(a.dump(2) + "\n");
    return MA_OK;
  });
}

}  // extern "C"
