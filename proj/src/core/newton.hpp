#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polynomial.hpp"

namespace milnor {

using LatticePoint = std::vector<std::int64_t>;

// Delta(w): support points where l_w is minimal.
struct Face {
  std::vector<LatticePoint> points;  // sorted
  std::vector<std::int64_t> weight;  // strictly positive witness
  std::int64_t degree = 0;           // d(w; f)
  int dim = 0;                       // affine dimension
};

struct NewtonData {
  int n = 0;
  std::vector<LatticePoint> support;   // nu + mu over nonzero terms, sorted
  std::vector<LatticePoint> vertices;  // sorted
  std::vector<Face> compact_faces;     // sorted by (dim, points)
};

// Exact over Z^n. n <= 3 gives the full set of compact faces; for n > 3 only
// faces reachable from support-difference normals and `extra_weights`.
NewtonData newton_data(const MixedPolynomial& f, std::span<const std::vector<std::int64_t>> extra_weights = {});

Face face_and_degree(const MixedPolynomial& f, std::span<const std::int64_t> w);

// Sub-sum of the terms whose nu + mu lies in Delta(w).
MixedPolynomial face_function(const MixedPolynomial& f, std::span<const std::int64_t> w);

std::vector<LatticePoint> support_points(const MixedPolynomial& f);

struct WitnessOptions {
  int budget = 32;  // multi-start count
  std::uint64_t seed = 1;
  double accept = 1e-8;
  int max_evals = 6000;
};

struct WitnessResult {
  std::optional<ComplexVector> point;  // nothing = no witness (inconclusive)
  double best_residual = 0.0;
  int starts_used = 0;
};

// Randomised search on (C*)^n for a point where the real 2 x 2n Jacobian of
// the face function drops rank (strong = false additionally asks f_w = 0).
// An empty result is not a proof of non-degeneracy.
WitnessResult degeneracy_witness(const MixedPolynomial& f, std::span<const std::int64_t> w, bool strong,
                                 const WitnessOptions& options = {});

// Smallest singular value of the real Jacobian of h : R^{2n} -> R^2 at p,
// built from the Wirtinger partials.
double real_jacobian_min_singular(const MixedPolynomial& h, std::span<const Complex> p);

}  // namespace milnor
