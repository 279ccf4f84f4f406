#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "error.hpp"
#include "linalg.hpp"
#include "nelder_mead.hpp"

namespace milnor {
namespace {

constexpr double kBarrier = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Inside the barrier when |h| is small against its terms or when the
// first-order distance |h| / |grad h| to K_h is below 1e-6 * eps.
bool near_zero_set(const DerivativeTable& table, const ComplexVector& p, double radius) {
  const FirstJet jet = table.first(p);
  const double value = std::abs(jet.value);
  if (!(value > kBarrier * table.polynomial().magnitude(p))) return true;
  double grad = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) grad += std::pow(std::abs(jet.dz[j]) + std::abs(jet.dzbar[j]), 2);
  return value <= kBarrier * radius * std::sqrt(grad);
}

using PointObjective = std::function<double(const SpherePoint&)>;

struct Descent {
  SpherePoint point;
  double value = kInf;
};

// Nelder-Mead in a chart centred at the current best point; the chart is
// recentred and the simplex shrunk after every round.
Descent descend(const PointObjective& objective, SpherePoint start, int max_evals, double target) {
  const double eps = start.radius;
  Descent best{start, objective(start)};
  double step = 0.25;
  for (int round = 0; round < 8 && best.value > target; ++round) {
    const oracle::SphereChart chart(best.point);
    auto chart_objective = [&](std::span<const double> x) -> double {
      Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
      if (xv.norm() > 0.5 * eps) return kInf;
      return objective(SpherePoint{chart.retract(xv), eps});
    };
    NelderMeadOptions nm;
    nm.max_evals = max_evals;
    nm.initial_step = step * eps;
    nm.target = target;
    const NelderMeadResult r = nelder_mead(chart_objective, std::vector<double>(chart.dim(), 0.0), nm);
    if (r.value < best.value) {
      Eigen::Map<const Eigen::VectorXd> xv(r.x.data(), static_cast<Eigen::Index>(r.x.size()));
      best = Descent{SpherePoint{chart.retract(xv), eps}, r.value};
    }
    step *= 0.2;
  }
  return best;
}

std::optional<SpherePoint> random_start(std::mt19937_64& rng, int n, double radius,
                                        const std::function<bool(const ComplexVector&)>& blocked) {
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 32; ++attempt) {
    ComplexVector p(static_cast<std::size_t>(n));
    for (auto& c : p) c = Complex(gauss(rng), gauss(rng));
    const double r = norm(p);
    if (!(r > 0.0)) continue;
    for (auto& c : p) c *= radius / r;
    if (!blocked(p)) return SpherePoint{std::move(p), radius};
  }
  return std::nullopt;
}

std::mt19937_64 start_rng(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  return std::mt19937_64(seq);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double distance(const ComplexVector& a, const ComplexVector& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace

void SearchConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what, "bad_config"); };
  if (starts <= 0) bad("starts must be positive");
  if (max_iters <= 0) bad("max_iters must be positive");
  if (!(tol_singular > 0.0)) bad("tol_singular must be positive");
  if (!(dedup_distance > 0.0)) bad("dedup_distance must be positive");
  if (!(tol_singular < dedup_distance)) bad("tol_singular must be smaller than dedup_distance");
  if (threads < 0) bad("threads must be non-negative");
  if (!(fold.tol_fold > 0.0) || !(fold.tol_dependence > 0.0)) bad("tolerances must be positive");
}

double objective_general(const MfpmPair& pair, const SpherePoint& p) {
  if (near_zero_set(pair.f_table(), p.p, p.radius) || near_zero_set(pair.g_table(), p.p, p.radius)) return kInf;
  return mfpm_singular_general(pair, p).sigma.back();
}

double objective_polar(const MfpmPair& pair, const SpherePoint& p) {
  if (near_zero_set(pair.f_table(), p.p, p.radius) || near_zero_set(pair.g_table(), p.p, p.radius)) return kInf;
  return mfpm_singular_polar(pair, p).dependence.sigma.back();
}

CheckedFold classify_checked(const MfpmPair& pair, const SpherePoint& p, const FoldOptions& options) {
  CheckedFold out;
  if (pair.s()) {
    try {
      out.oracle = oracle::hessian_verdict(pair.f(), pair.g(), pair.s_value(), p);
    } catch (const Error& e) {
      out.oracle_error = e.reason().empty() ? error_code_name(e.code()) : e.reason();
    }
  }
  try {
    out.fold = classify_fold(pair, p, options);
  } catch (const Error& e) {
    out.error_code = error_code_name(e.code());
    out.error_reason = e.reason();
    out.error_message = e.what();
    return out;
  }
  if (out.oracle && out.fold->verdict != FoldVerdict::NotSingular)
    out.fold->oracle_agreement = (out.fold->verdict == FoldVerdict::Fold) == out.oracle->nondegenerate;
  return out;
}

ComplexVector orbit_representative(const WeightType& wt, const ComplexVector& p) {
  if (wt.d == 0) return p;
  double top = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (wt.w[j] != 0) top = std::max(top, std::abs(p[j]));
  std::size_t pivot = p.size();
  for (std::size_t j = 0; j < p.size() && pivot == p.size(); ++j)
    if (wt.w[j] != 0 && std::abs(p[j]) >= top * (1.0 - 1e-12)) pivot = j;
  if (pivot == p.size()) return p;
  const double wj = static_cast<double>(wt.w[pivot]);
  const double d = static_cast<double>(wt.d);
  const double t0 = -std::arg(p[pivot]) * d / wj;
  const auto copies = static_cast<int>(std::abs(wt.w[pivot]));
  ComplexVector best;
  std::vector<double> best_key;
  for (int k = 0; k < copies; ++k) {
    ComplexVector q = torus_flow(wt, t0 + 2.0 * std::numbers::pi * k * d / wj, p);
    q[pivot] = Complex(std::abs(q[pivot]), 0.0);
    std::vector<double> key = realify(q);
    for (double& v : key) v = std::round(v * 1e9);
    if (best.empty() || key < best_key) {
      best = std::move(q);
      best_key = std::move(key);
    }
  }
  return best;
}

int worker_count(int requested, int work) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("MILNOR_ATLAS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, std::min(n, std::max(work, 1)));
}

SingularLocusSample find_singular_points(const MfpmPair& pair, double radius, const SearchConfig& config) {
  config.validate();
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::InvalidArgument, "radius must be positive", "bad_radius");

  SingularLocusSample sample;
  sample.polar_objective = pair.polar_criterion_valid();
  sample.threads_used = worker_count(config.threads, config.starts);
  sample.starts_run = config.starts;
  const int n = pair.nvars();
  const double accept = config.tol_singular;

  const PointObjective descent = sample.polar_objective
                                     ? PointObjective([&](const SpherePoint& p) { return objective_polar(pair, p); })
                                     : PointObjective([&](const SpherePoint& p) { return objective_general(pair, p); });
  auto blocked = [&](const ComplexVector& p) {
    return near_zero_set(pair.f_table(), p, radius) || near_zero_set(pair.g_table(), p, radius);
  };

  struct StartResult {
    std::optional<SpherePoint> point;
    double objective = kInf;
    bool barrier = false;
  };
  std::vector<StartResult> results(static_cast<std::size_t>(config.starts));
  parallel_for(config.starts, sample.threads_used, [&](int start) {
    std::mt19937_64 rng = start_rng(config.seed, start);
    StartResult& out = results[static_cast<std::size_t>(start)];
    const auto p0 = random_start(rng, n, radius, blocked);
    if (!p0) {
      out.barrier = true;
      return;
    }
    const Descent d = descend(descent, *p0, config.max_iters, accept * 1e-2);
    out.objective = objective_general(pair, d.point);
    if (out.objective <= accept) out.point = d.point;
  });

  for (int start = 0; start < config.starts; ++start) {
    const StartResult& r = results[static_cast<std::size_t>(start)];
    if (r.barrier) ++sample.starts_on_barrier;
    if (!r.point) continue;
    const bool duplicate = std::any_of(sample.points.begin(), sample.points.end(), [&](const SingularPoint& q) {
      return distance(q.point.p, r.point->p) < config.dedup_distance * radius;
    });
    if (duplicate) continue;
    SingularPoint sp;
    sp.point = *r.point;
    sp.objective = r.objective;
    sp.start = start;
    try {
      sp.general = mfpm_singular_general(pair, sp.point, config.fold.tol_dependence);
      sp.jacobian = oracle::jacobian_verdict(pair.f(), pair.g(), oracle::SphereChart(sp.point));
      if (pair.polar_criterion_valid()) sp.polar = mfpm_singular_polar(pair, sp.point, config.fold.tol_dependence);
    } catch (const Error&) {
      ++sample.rejected;
      continue;
    }
    if (!sp.general.dependent || !sp.jacobian.deficient) {
      ++sample.rejected;
      continue;
    }
    sample.points.push_back(std::move(sp));
  }

  // Orbits under the torus action of w_f.
  std::vector<ComplexVector> reps;
  const bool torus = pair.weight_f() && pair.weight_f()->d != 0;
  for (auto& sp : sample.points) {
    const ComplexVector rep = torus ? orbit_representative(*pair.weight_f(), sp.point.p) : sp.point.p;
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](const ComplexVector& q) { return distance(q, rep) < config.dedup_distance * radius; });
    if (it == reps.end()) {
      sp.orbit = static_cast<int>(reps.size());
      reps.push_back(rep);
    } else {
      sp.orbit = static_cast<int>(it - reps.begin());
    }
  }
  sample.orbit_count = static_cast<int>(reps.size());

  if (config.classify && pair.polar_criterion_valid()) {
    parallel_for(static_cast<int>(sample.points.size()), worker_count(config.threads, static_cast<int>(sample.points.size())),
                 [&](int i) {
                   auto& sp = sample.points[static_cast<std::size_t>(i)];
                   sp.fold = classify_checked(pair, sp.point, config.fold);
                 });
  }
  return sample;
}

GoodnessProbe probe_goodness(const MixedPolynomial& f, double radius, int starts, std::uint64_t seed) {
  GoodnessProbe probe;
  probe.status = "no_singular_witness";
  probe.best_sigma = kInf;
  const DerivativeTable table(f);
  double eps = radius;
  const PointObjective objective = [&](const SpherePoint& p) -> double {
    if (near_zero_set(table, p.p, p.radius)) return kInf;
    return phi_f_singular(f, p).sigma.back();
  };
  auto blocked = [&](const ComplexVector& p) { return near_zero_set(table, p, eps); };
  for (const double r : {radius, radius / 2}) {
    eps = r;
    probe.radii.push_back(eps);
    for (int start = 0; start < starts; ++start) {
      std::mt19937_64 rng = start_rng(seed, start);
      const auto p0 = random_start(rng, f.nvars(), eps, blocked);
      if (!p0) continue;
      const Descent d = descend(objective, *p0, 2000, 1e-12);
      probe.best_sigma = std::min(probe.best_sigma, d.value);
      if (d.value <= 1e-10 && phi_f_singular(f, d.point).dependent) {
        probe.status = "witnessed_singular";
        probe.witness = d.point;
        return probe;
      }
    }
  }
  return probe;
}

}  // namespace milnor
