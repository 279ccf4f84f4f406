#include "newton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "error.hpp"
#include "lattice.hpp"
#include "nelder_mead.hpp"
#include "weights.hpp"

namespace milnor {
namespace {

std::int64_t ell(std::span<const std::int64_t> w, const LatticePoint& a) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += w[j] * a[j];
  return s;
}

IntVector diff(const LatticePoint& a, const LatticePoint& b) {
  IntVector d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = BigInt(a[j]) - BigInt(b[j]);
  return d;
}

int affine_dim(const std::vector<LatticePoint>& pts) {
  if (pts.size() <= 1) return 0;
  IntMatrix rows;
  for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(diff(pts[i], pts[0]));
  return integer_rank(rows, static_cast<int>(pts[0].size()));
}

Face face_of(const std::vector<LatticePoint>& support, std::span<const std::int64_t> w) {
  Face face;
  face.weight.assign(w.begin(), w.end());
  std::int64_t best = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::int64_t v = ell(w, support[i]);
    if (i == 0 || v < best) {
      best = v;
      face.points.clear();
    }
    if (v == best) face.points.push_back(support[i]);
  }
  face.degree = best;
  face.dim = affine_dim(face.points);
  return face;
}

void require_positive(std::span<const std::int64_t> w, int n) {
  if (static_cast<int>(w.size()) != n) throw Error(ErrorCode::DimensionMismatch, "weight length differs from n");
  for (auto x : w)
    if (x < 1) throw Error(ErrorCode::InvalidArgument, "weight must be strictly positive", "non_positive_weight");
}

BigInt cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (BigInt(a[0]) - o[0]) * (BigInt(b[1]) - o[1]) - (BigInt(a[1]) - o[1]) * (BigInt(b[0]) - o[0]);
}

// n = 2: vertices of the lower-left staircase hull, faces = vertices + edges.
void planar_faces(const std::vector<LatticePoint>& support, std::vector<LatticePoint>& vertices,
                  std::vector<std::vector<std::int64_t>>& weights) {
  std::vector<LatticePoint> minimal;
  for (const auto& a : support) {
    bool dominated = false;
    for (const auto& b : support)
      if (b != a && b[0] <= a[0] && b[1] <= a[1]) dominated = true;
    if (!dominated) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end());  // x ascending, hence y descending
  std::vector<LatticePoint> hull;
  for (const auto& p : minimal) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  vertices = hull;
  std::vector<std::vector<std::int64_t>> edge_normals;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    IntVector nrm{BigInt(hull[i][1] - hull[i + 1][1]), BigInt(hull[i + 1][0] - hull[i][0])};
    edge_normals.push_back(to_int64(make_primitive(nrm)));
  }
  for (const auto& e : edge_normals) weights.push_back(e);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    std::vector<std::int64_t> w(2, 0);
    if (hull.size() == 1) {
      w = {1, 1};
    } else {
      const auto& left = i == 0 ? std::vector<std::int64_t>{1, 0} : edge_normals[i - 1];
      const auto& right = i + 1 == hull.size() ? std::vector<std::int64_t>{0, 1} : edge_normals[i];
      w = {left[0] + right[0], left[1] + right[1]};
    }
    weights.push_back(to_int64(make_primitive(to_big(w))));
  }
}

void general_faces(const std::vector<LatticePoint>& support, int n, std::vector<LatticePoint>& vertices,
                   std::vector<std::vector<std::int64_t>>& weights) {
  for (const auto& a : support) {
    IntMatrix strict;
    for (const auto& s : support)
      if (s != a) strict.push_back(diff(s, a));
    if (auto w = strictly_positive_weight(strict, {}, n)) {
      vertices.push_back(a);
      weights.push_back(to_int64(*w));
    }
  }
  // Edges between vertex pairs.
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t k = i + 1; k < vertices.size(); ++k) {
      const IntVector dir = diff(vertices[k], vertices[i]);
      IntMatrix strict;
      for (const auto& s : support) {
        if (s == vertices[i]) continue;
        const IntVector d = diff(s, vertices[i]);
        if (integer_rank({d, dir}, n) <= 1) continue;  // collinear, lies on the segment
        strict.push_back(d);
      }
      if (auto w = strictly_positive_weight(strict, {dir}, n)) weights.push_back(to_int64(*w));
    }
  // Facets from affinely independent n-subsets of vertices.
  const std::size_t v = vertices.size();
  if (v >= static_cast<std::size_t>(n)) {
    double combos = 1.0;
    for (int i = 0; i < n; ++i) combos *= static_cast<double>(v - i) / (i + 1);
    if (combos <= 20000.0) {
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      for (;;) {
        IntMatrix rows;
        for (int i = 1; i < n; ++i) rows.push_back(diff(vertices[idx[i]], vertices[idx[0]]));
        auto ker = integer_kernel(rows, n);
        if (ker.size() == 1) {
          IntVector w = ker[0];
          if (std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x < 0; }))
            for (auto& x : w) x = -x;
          if (std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x > 0; })) weights.push_back(to_int64(w));
        }
        int i = n - 1;
        while (i >= 0 && idx[i] == static_cast<int>(v) - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
}

}  // namespace

std::vector<LatticePoint> support_points(const MixedPolynomial& f) {
  std::set<LatticePoint> pts;
  for (const auto& t : f.terms()) {
    LatticePoint a(t.nu.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = t.nu[j] + t.mu[j];
    pts.insert(std::move(a));
  }
  return {pts.begin(), pts.end()};
}

NewtonData newton_data(const MixedPolynomial& f, std::span<const std::vector<std::int64_t>> extra_weights) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no Newton polygon");
  const int n = f.nvars();
  NewtonData nd;
  nd.n = n;
  nd.support = support_points(f);

  std::vector<std::vector<std::int64_t>> weights;
  if (n == 1) {
    nd.vertices = {nd.support.front()};
    weights.push_back({1});
  } else if (n == 2) {
    planar_faces(nd.support, nd.vertices, weights);
  } else {
    general_faces(nd.support, n, nd.vertices, weights);
  }
  for (const auto& w : extra_weights) {
    require_positive(w, n);
    weights.push_back(w);
  }

  std::map<std::vector<LatticePoint>, Face> faces;
  auto add = [&](const std::vector<std::int64_t>& w) {
    Face face = face_of(nd.support, w);
    return faces.emplace(face.points, std::move(face)).second;
  };
  for (const auto& w : weights) add(w);
  if (n >= 3) {
    // Intersections of known faces: Delta(w1 + w2) = Delta(w1) cap Delta(w2)
    // whenever the intersection is nonempty.
    for (int round = 0; round < 3; ++round) {
      std::vector<std::vector<std::int64_t>> known;
      for (const auto& [pts, face] : faces) known.push_back(face.weight);
      bool grew = false;
      for (std::size_t i = 0; i < known.size(); ++i)
        for (std::size_t k = i + 1; k < known.size(); ++k) {
          std::vector<std::int64_t> w(n);
          for (int j = 0; j < n; ++j) w[j] = known[i][j] + known[k][j];
          grew |= add(to_int64(make_primitive(to_big(w))));
        }
      if (!grew) break;
    }
  }
  for (auto& [pts, face] : faces) nd.compact_faces.push_back(std::move(face));
  std::sort(nd.compact_faces.begin(), nd.compact_faces.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.points < b.points;
  });
  std::sort(nd.vertices.begin(), nd.vertices.end());
  return nd;
}

Face face_and_degree(const MixedPolynomial& f, std::span<const std::int64_t> w) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no faces");
  require_positive(w, f.nvars());
  return face_of(support_points(f), w);
}

MixedPolynomial face_function(const MixedPolynomial& f, std::span<const std::int64_t> w) {
  const Face face = face_and_degree(f, w);
  std::vector<MixedMonomial> kept;
  for (const auto& t : f.terms()) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < w.size(); ++j) v += w[j] * (t.nu[j] + t.mu[j]);
    if (v == face.degree) kept.push_back(t);
  }
  return MixedPolynomial::from_terms(f.nvars(), kept);
}

double real_jacobian_min_singular(const MixedPolynomial& h, std::span<const Complex> p) {
  const int n = h.nvars();
  // Gram matrix J J^T of the 2 x 2n real Jacobian.
  double g00 = 0.0, g01 = 0.0, g11 = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex hz = h.wirtinger(j, false).evaluate(p);
    const Complex hzb = h.wirtinger(j, true).evaluate(p);
    const Complex dx = hz + hzb;
    const Complex dy = Complex(0.0, 1.0) * (hz - hzb);
    for (const Complex& c : {dx, dy}) {
      g00 += c.real() * c.real();
      g01 += c.real() * c.imag();
      g11 += c.imag() * c.imag();
    }
  }
  const double tr = g00 + g11;
  const double det = g00 * g11 - g01 * g01;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(std::max(0.0, tr / 2.0 - disc));
}

WitnessResult degeneracy_witness(const MixedPolynomial& f, std::span<const std::int64_t> w, bool strong,
                                 const WitnessOptions& options) {
  const MixedPolynomial fw = face_function(f, w);
  if (fw.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "face function is zero");
  const int n = f.nvars();
  const DerivativeTable table(fw);
  double coeff_scale = 0.0;
  for (const auto& t : fw.terms()) coeff_scale += std::abs(t.coeff);

  // Log-polar coordinates; the radial weighted action is used to normalise so
  // that max_j |z_j|^{1/w_j} = 1 (criticality is invariant under it).
  auto to_point = [&](std::span<const double> x) {
    double m = -INFINITY;
    for (int j = 0; j < n; ++j) m = std::max(m, x[2 * j] / static_cast<double>(w[j]));
    ComplexVector q(n);
    for (int j = 0; j < n; ++j) q[j] = std::polar(std::exp(x[2 * j] - static_cast<double>(w[j]) * m), x[2 * j + 1]);
    return q;
  };
  auto residual_at = [&](const ComplexVector& q) {
    const FirstJet jet = table.first(q);
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex dx = jet.dz[j] + jet.dzbar[j];
      const Complex dy = Complex(0.0, 1.0) * (jet.dz[j] - jet.dzbar[j]);
      for (const Complex& c : {dx, dy}) {
        g00 += c.real() * c.real();
        g01 += c.real() * c.imag();
        g11 += c.imag() * c.imag();
      }
    }
    const double tr = g00 + g11;
    const double det = g00 * g11 - g01 * g01;
    const double smin = std::sqrt(std::max(0.0, tr / 2.0 - std::sqrt(std::max(0.0, tr * tr / 4.0 - det))));
    double r = smin / coeff_scale;
    if (!strong) r += std::abs(jet.value) / coeff_scale;
    return r;
  };
  auto objective = [&](std::span<const double> x) -> double {
    for (int j = 0; j < n; ++j)
      if (std::abs(x[2 * j]) > 3.0) return INFINITY;
    return residual_at(to_point(x));
  };

  WitnessResult result;
  result.best_residual = INFINITY;
  for (int start = 0; start < options.budget; ++start) {
    std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(start)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> rho(-3.0, 3.0), theta(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x(2 * n);
    for (int j = 0; j < n; ++j) {
      x[2 * j] = rho(rng);
      x[2 * j + 1] = theta(rng);
    }
    NelderMeadOptions nm;
    nm.max_evals = options.max_evals;
    nm.initial_step = 0.3;
    nm.target = options.accept * 1e-2;
    double step = nm.initial_step;
    NelderMeadResult best;
    best.value = INFINITY;
    for (int restart = 0; restart < 4; ++restart) {
      nm.initial_step = step;
      auto r = nelder_mead(objective, x, nm);
      if (r.value < best.value) best = r;
      x = best.x;
      step *= 0.1;
      if (best.value <= nm.target) break;
    }
    result.starts_used = start + 1;
    result.best_residual = std::min(result.best_residual, best.value);
    if (best.value < options.accept) {
      result.point = to_point(best.x);
      break;
    }
  }
  return result;
}

}  // namespace milnor
