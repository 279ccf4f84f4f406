// milnor-atlas command-line front end. Talks to the library only through the
// C interface.
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "milnor_atlas/milnor_atlas.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct PolyDeleter {
  void operator()(ma_polynomial* p) const { ma_polynomial_free(p); }
};
struct OptionsDeleter {
  void operator()(ma_options* o) const { ma_options_free(o); }
};
using Poly = std::unique_ptr<ma_polynomial, PolyDeleter>;
using Options = std::unique_ptr<ma_options, OptionsDeleter>;

struct UsageError : std::runtime_error {
  std::string reason;
  std::string code;
  UsageError(const std::string& msg, std::string r, std::string c = "usage_error")
      : std::runtime_error(msg), reason(std::move(r)), code(std::move(c)) {}
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string error_json(const std::string& code, const std::string& reason, const std::string& message) {
  return "{\n  \"error\": {\n    \"code\": \"" + json_escape(code) + "\",\n    \"message\": \"" + json_escape(message) +
         "\",\n    \"reason\": \"" + json_escape(reason) + "\"\n  },\n  \"ok\": false,\n  \"schema\": \"milnor-atlas/1\"\n}\n";
}

struct Common {
  std::string out;
  std::optional<double> radius;
  std::optional<double> tol_dependence, tol_fold, tol_singular, dedup_distance;
  std::optional<std::int64_t> seed, threads;
};

void emit(const Common& common, const std::string& json) {
  if (common.out.empty() || common.out == "-") {
    std::cout << json;
    std::cout.flush();
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + common.out + "'", "output_unwritable");
  f << json;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'", "input_unreadable");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Poly load_polynomial(const std::string& path) {
  const std::string content = read_file(path);
  ma_polynomial* p = nullptr;
  if (ma_polynomial_parse_file(content.c_str(), &p) != MA_OK)
    throw UsageError(path + ": " + ma_last_error(), "bad_input", "parse_error");
  return Poly(p);
}

// Complex numbers separated by ',' or whitespace: "0.6", "-0.8i", "0.6+0.8i",
// "1e-3-2i", "i", "-i".
std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(normalized);
  std::string tok;
  auto bad = [&](const std::string& t) { return UsageError("cannot parse complex number '" + t + "'", "bad_point"); };
  while (in >> tok) {
    double re = 0.0, im = 0.0;
    const char* p = tok.data();
    const char* end = tok.data() + tok.size();
    auto read_real = [&](double& v) -> bool {
      const char* start = p;
      bool neg = false;
      if (p < end && (*p == '+' || *p == '-')) neg = *p++ == '-';
      if (p < end && *p == 'i') {
        v = neg ? -1.0 : 1.0;
        return true;
      }
      const auto r = std::from_chars(p, end, v);
      if (r.ec != std::errc()) {
        p = start;
        return false;
      }
      if (neg) v = -v;
      p = r.ptr;
      return true;
    };
    double first = 0.0;
    if (!read_real(first)) throw bad(tok);
    if (p < end && *p == 'i') {
      im = first;
      ++p;
    } else {
      re = first;
      if (p < end) {
        double second = 0.0;
        if (!(*p == '+' || *p == '-') || !read_real(second) || p >= end || *p != 'i') throw bad(tok);
        im = second;
        ++p;
      }
    }
    if (p != end) throw bad(tok);
    out.push_back(re);
    out.push_back(im);
  }
  if (out.empty()) throw UsageError("empty point", "bad_point");
  return out;
}

std::vector<std::int64_t> parse_weight(const std::string& text) {
  std::vector<std::int64_t> w;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) {
    std::int64_t v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
      throw UsageError("cannot parse weight entry '" + tok + "'", "bad_weight");
    w.push_back(v);
  }
  if (w.empty()) throw UsageError("empty weight", "bad_weight");
  return w;
}

Options make_options(const Common& c) {
  Options o(ma_options_new());
  auto set_d = [&](const char* key, const std::optional<double>& v) {
    if (v && ma_options_set_double(o.get(), key, *v) != MA_OK) throw UsageError(ma_last_error(), "bad_option");
  };
  auto set_i = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v && ma_options_set_int(o.get(), key, *v) != MA_OK) throw UsageError(ma_last_error(), "bad_option");
  };
  set_d("radius", c.radius);
  set_d("tol_dependence", c.tol_dependence);
  set_d("tol_fold", c.tol_fold);
  set_d("tol_singular", c.tol_singular);
  set_d("dedup_distance", c.dedup_distance);
  set_i("seed", c.seed);
  set_i("threads", c.threads);
  return o;
}

// Emits the report and maps the status to an exit code.
int finish(const Common& common, ma_status status, char* json, bool verification = false) {
  const std::string text = json ? json : error_json(ma_status_name(status), "", ma_last_error());
  ma_string_free(json);
  emit(common, text);
  if (status == MA_OK) return kExitOk;
  std::cerr << "milnor-atlas: " << ma_status_name(status) << ": " << ma_last_error() << "\n";
  if (verification && status == MA_ERR_VERIFICATION_FAILED) return kExitVerificationFailed;
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular points and folds of the product map (f/|f|, g/|g|) on a sphere"};
  app.set_config("--config", "", "TOML file with option values (keys as the long flag names)");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ma_version());

  Common common;
  std::string f_file, g_file, weight_text, point_text, suite;
  std::optional<std::int64_t> starts, max_iters, witness_budget;
  bool no_classify = false, no_goodness = false, list_suites = false;

  app.add_option("-o,--out", common.out, "Write the JSON report here instead of stdout");
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--radius", common.radius, "Sphere radius")->check(CLI::PositiveNumber);
  app.add_option("--tol-dependence", common.tol_dependence, "Relative rank tolerance of the dependence tests")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-fold", common.tol_fold, "Eigenvalue tolerance of the fold test")->check(CLI::PositiveNumber);
  app.add_option("--tol-singular", common.tol_singular, "Acceptance threshold of the search objective")
      ->check(CLI::PositiveNumber);
  app.add_option("--dedup-distance", common.dedup_distance, "Merge distance for found points")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", common.threads, "Worker threads, 0 = hardware concurrency")
      ->check(CLI::NonNegativeNumber);

  auto* analyze = app.add_subcommand("analyze", "Terms, weight types and Euler residual of one polynomial");
  analyze->add_option("f", f_file, "Polynomial file")->required();

  auto* newton = app.add_subcommand("newton", "Newton boundary, with an optional face query");
  newton->add_option("f", f_file, "Polynomial file")->required();
  newton->add_option("--weight", weight_text, "Strictly positive weight, e.g. 1,2");
  app.add_option("--witness-budget", witness_budget, "Starts of the degeneracy witness search")
      ->check(CLI::PositiveNumber);

  auto* singular = app.add_subcommand("singular", "Search for singular points on the sphere");
  singular->add_option("f", f_file, "Polynomial file for f")->required();
  singular->add_option("g", g_file, "Polynomial file for g")->required();
  app.add_option("--starts", starts, "Number of search starts")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", max_iters, "Objective evaluations per chart")->check(CLI::PositiveNumber);
  singular->add_flag("--no-classify", no_classify, "Skip fold classification of found points");

  auto* classify = app.add_subcommand("classify", "Full verdict chain at one point");
  classify->add_option("f", f_file, "Polynomial file for f")->required();
  classify->add_option("g", g_file, "Polynomial file for g")->required();
  classify->add_option("--point", point_text, "Point, e.g. \"0,1\" or \"0.6+0.8i, 0\"")->required();
  classify->add_flag("--no-goodness", no_goodness, "Skip the goodness witness search");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("--suite", suite, "Suite name, or 'all'");
  verify->add_flag("--list", list_suites, "List the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Options opts = make_options(common);
    char* json = nullptr;
    if (analyze->parsed()) {
      const Poly f = load_polynomial(f_file);
      const ma_status st = ma_analyze(f.get(), opts.get(), &json);
      return finish(common, st, json);
    }
    if (newton->parsed()) {
      const Poly f = load_polynomial(f_file);
      if (!weight_text.empty()) {
        const auto w = parse_weight(weight_text);
        ma_options_set_weight(opts.get(), w.data(), w.size());
      }
      if (witness_budget) ma_options_set_int(opts.get(), "witness_budget", *witness_budget);
      const ma_status st = ma_newton(f.get(), opts.get(), &json);
      return finish(common, st, json);
    }
    if (singular->parsed()) {
      const Poly f = load_polynomial(f_file);
      const Poly g = load_polynomial(g_file);
      if (starts) ma_options_set_int(opts.get(), "starts", *starts);
      if (max_iters) ma_options_set_int(opts.get(), "max_iters", *max_iters);
      if (no_classify) ma_options_set_int(opts.get(), "classify", 0);
      const ma_status st = ma_singular(f.get(), g.get(), opts.get(), &json);
      if (st == MA_OK && json && std::string(json).find("all_starts_near_K_fg") != std::string::npos)
        std::cerr << "milnor-atlas: warning: every start lay within the barrier around K_fg\n";
      return finish(common, st, json);
    }
    if (classify->parsed()) {
      const Poly f = load_polynomial(f_file);
      const Poly g = load_polynomial(g_file);
      const auto p = parse_point(point_text);
      ma_options_set_point(opts.get(), p.data(), p.size() / 2);
      if (no_goodness) ma_options_set_int(opts.get(), "check_goodness", 0);
      const ma_status st = ma_classify(f.get(), g.get(), opts.get(), &json);
      return finish(common, st, json);
    }
    if (verify->parsed()) {
      if (list_suites) {
        const ma_status st = ma_suite_list(&json);
        return finish(common, st, json);
      }
      if (suite.empty()) throw UsageError("verify needs --suite or --list", "missing_suite");
      const ma_status st = ma_verify(suite.c_str(), opts.get(), &json);
      return finish(common, st, json, true);
    }
  } catch (const UsageError& e) {
    try {
      emit(common, error_json(e.code, e.reason, e.what()));
    } catch (const UsageError&) {
      std::cout << error_json(e.code, e.reason, e.what());
    }
    std::cerr << "milnor-atlas: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
