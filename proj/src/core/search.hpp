#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "fold.hpp"
#include "oracle.hpp"

namespace milnor {

struct SearchConfig {
  int starts = 64;
  int max_iters = 3000;  // objective evaluations per chart
  double tol_singular = 1e-10;
  double dedup_distance = 1e-6;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency, capped by MILNOR_ATLAS_THREADS
  bool classify = true;
  FoldOptions fold;

  // Throws InvalidArgument ("bad_config") on violated invariants.
  void validate() const;
};

// sigma_3 of [p/eps | v_f/|v_f| | v_g/|v_g|]; +inf within the barrier
// around K_fg: |h(p)| <= 1e-6 * sum |terms of h|, or |h| / |grad h| <= 1e-6 * eps.
double objective_general(const MfpmPair& pair, const SpherePoint& p);
// sigma_2 of [v_f/|v_f| | v_g/|v_g|] (complex); same barrier.
double objective_polar(const MfpmPair& pair, const SpherePoint& p);

// Fold classification with the finite-difference Hessian computed first.
struct CheckedFold {
  std::optional<FoldReport> fold;
  std::optional<oracle::HessianVerdict> oracle;
  std::string error_code;  // set when classification raised
  std::string error_reason;
  std::string error_message;
  std::string oracle_error;
};
CheckedFold classify_checked(const MfpmPair& pair, const SpherePoint& p, const FoldOptions& options = {});

struct SingularPoint {
  SpherePoint point;
  double objective = 0.0;
  DependenceReport general;
  std::optional<PolarReport> polar;
  oracle::JacobianVerdict jacobian;
  int start = 0;
  int orbit = 0;
  std::optional<CheckedFold> fold;
};

struct SingularLocusSample {
  std::vector<SingularPoint> points;
  int orbit_count = 0;
  int starts_run = 0;
  int starts_on_barrier = 0;  // starts that never left the K_fg barrier
  int rejected = 0;           // minima below tol that failed re-verification
  int threads_used = 1;
  bool polar_objective = false;
};

SingularLocusSample find_singular_points(const MfpmPair& pair, double radius, const SearchConfig& config);

// Orbit representative under p -> torus_flow(wt, t, p): the largest-modulus
// coordinate (lowest index on ties) gets phase zero.
ComplexVector orbit_representative(const WeightType& wt, const ComplexVector& p);

// Witness test for "good": searches for singular points of f/|f| at eps and
// eps / 2. Finding none is inconclusive, not a proof.
struct GoodnessProbe {
  std::string status;  // "no_singular_witness" or "witnessed_singular"
  std::vector<double> radii;
  std::optional<SpherePoint> witness;
  double best_sigma = 0.0;
};
GoodnessProbe probe_goodness(const MixedPolynomial& f, double radius, int starts = 16, std::uint64_t seed = 1);

// Worker count: requested (0 = hardware), capped by MILNOR_ATLAS_THREADS and work.
int worker_count(int requested, int work);

}  // namespace milnor
