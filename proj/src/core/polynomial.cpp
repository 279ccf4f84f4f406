#include "polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <utility>

#include "error.hpp"

namespace milnor {
namespace {

using Key = std::pair<std::vector<int>, std::vector<int>>;

Complex ipow(Complex base, int e) {
  Complex result(1.0, 0.0);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Complex monomial_value(const MixedMonomial& m, std::span<const Complex> p) {
  Complex v = m.coeff;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (m.nu[j]) v *= ipow(p[j], m.nu[j]);
    if (m.mu[j]) v *= ipow(std::conj(p[j]), m.mu[j]);
  }
  return v;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

int MixedMonomial::holomorphic_degree() const { return std::accumulate(nu.begin(), nu.end(), 0); }
int MixedMonomial::antiholomorphic_degree() const {
  return std::accumulate(mu.begin(), mu.end(), 0);
}

MixedPolynomial::MixedPolynomial(int n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "variable count must be >= 1");
}

MixedPolynomial MixedPolynomial::from_terms(int n, std::span<const MixedMonomial> terms) {
  MixedPolynomial out(n);
  std::map<Key, Complex> merged;
  for (const auto& t : terms) {
    if (static_cast<int>(t.nu.size()) != n || static_cast<int>(t.mu.size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "monomial exponent length differs from n");
    for (int j = 0; j < n; ++j)
      if (t.nu[j] < 0 || t.mu[j] < 0)
        throw Error(ErrorCode::InvalidArgument, "negative exponent");
    merged[Key{t.nu, t.mu}] += t.coeff;
  }
  for (auto& [key, c] : merged) {
    if (std::abs(c) < kMergeThreshold) continue;
    out.terms_.push_back(MixedMonomial{c, key.first, key.second});
  }
  return out;
}

MixedPolynomial MixedPolynomial::constant(int n, Complex c) {
  MixedMonomial m{c, std::vector<int>(n, 0), std::vector<int>(n, 0)};
  return from_terms(n, std::span(&m, 1));
}

MixedPolynomial MixedPolynomial::variable(int n, int j, bool conjugated) {
  if (j < 0 || j >= n) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  MixedMonomial m{Complex(1.0), std::vector<int>(n, 0), std::vector<int>(n, 0)};
  (conjugated ? m.mu : m.nu)[j] = 1;
  return from_terms(n, std::span(&m, 1));
}

void MixedPolynomial::check_point(std::span<const Complex> p) const {
  if (static_cast<int>(p.size()) != n_)
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(p.size()) + " coordinates, polynomial has " +
                    std::to_string(n_) + " variables");
}

Complex MixedPolynomial::evaluate(std::span<const Complex> p) const {
  check_point(p);
  Complex sum(0.0, 0.0);
  for (const auto& t : terms_) sum += monomial_value(t, p);
  return sum;
}

double MixedPolynomial::magnitude(std::span<const Complex> p) const {
  check_point(p);
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(monomial_value(t, p));
  return sum;
}

MixedPolynomial MixedPolynomial::wirtinger(int j, bool conjugated) const {
  if (j < 0 || j >= n_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  std::vector<MixedMonomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const int e = conjugated ? t.mu[j] : t.nu[j];
    if (e == 0) continue;
    MixedMonomial d = t;
    d.coeff *= static_cast<double>(e);
    (conjugated ? d.mu : d.nu)[j] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(n_, out);
}

MixedPolynomial MixedPolynomial::conjugate() const {
  std::vector<MixedMonomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(MixedMonomial{std::conj(t.coeff), t.mu, t.nu});
  return from_terms(n_, out);
}

bool MixedPolynomial::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const MixedMonomial& t) { return t.antiholomorphic_degree() == 0; });
}

int MixedPolynomial::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.holomorphic_degree() + t.antiholomorphic_degree());
  return d;
}

MixedPolynomial MixedPolynomial::operator+(const MixedPolynomial& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  std::vector<MixedMonomial> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(n_, all);
}

MixedPolynomial MixedPolynomial::operator-(const MixedPolynomial& other) const {
  return *this + other * Complex(-1.0);
}

MixedPolynomial MixedPolynomial::operator*(Complex c) const {
  std::vector<MixedMonomial> all = terms_;
  for (auto& t : all) t.coeff *= c;
  return from_terms(n_, all);
}

MixedPolynomial MixedPolynomial::operator*(const MixedPolynomial& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  std::vector<MixedMonomial> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) {
      MixedMonomial m{a.coeff * b.coeff, a.nu, a.mu};
      for (int j = 0; j < n_; ++j) {
        m.nu[j] += b.nu[j];
        m.mu[j] += b.mu[j];
      }
      all.push_back(std::move(m));
    }
  return from_terms(n_, all);
}

bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.coeff != y.coeff || x.nu != y.nu || x.mu != y.mu) return false;
  }
  return true;
}

std::string MixedPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool has_vars = t.holomorphic_degree() + t.antiholomorphic_degree() > 0;
    std::string coeff;
    bool negative = false;
    if (t.coeff.imag() == 0.0) {
      double r = t.coeff.real();
      negative = r < 0.0;
      r = std::abs(r);
      if (!(has_vars && r == 1.0)) coeff = format_double(r);
    } else {
      const double im = t.coeff.imag();
      coeff = "(" + format_double(t.coeff.real()) + (im < 0.0 ? "-" : "+") +
              format_double(std::abs(im)) + "i)";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string body = coeff;
    auto append = [&body](const std::string& factor) {
      if (!body.empty()) body += "*";
      body += factor;
    };
    for (int j = 0; j < n_; ++j) {
      if (t.nu[j]) append("z" + std::to_string(j + 1) + (t.nu[j] > 1 ? "^" + std::to_string(t.nu[j]) : ""));
      if (t.mu[j]) append("~z" + std::to_string(j + 1) + (t.mu[j] > 1 ? "^" + std::to_string(t.mu[j]) : ""));
    }
    out += body;
  }
  return out;
}

DerivativeTable::DerivativeTable(const MixedPolynomial& h, bool with_second)
    : h_(h), has_second_(with_second) {
  const int n = h.nvars();
  for (int j = 0; j < n; ++j) {
    dz_.push_back(h.wirtinger(j, false));
    dzbar_.push_back(h.wirtinger(j, true));
  }
  if (!with_second) return;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      zz_.push_back(dz_[j].wirtinger(k, false));
      zzbar_.push_back(dz_[j].wirtinger(k, true));
      zbarzbar_.push_back(dzbar_[j].wirtinger(k, true));
    }
}

FirstJet DerivativeTable::first(std::span<const Complex> p) const {
  FirstJet jet;
  jet.value = h_.evaluate(p);
  jet.dz.reserve(dz_.size());
  jet.dzbar.reserve(dzbar_.size());
  for (const auto& d : dz_) jet.dz.push_back(d.evaluate(p));
  for (const auto& d : dzbar_) jet.dzbar.push_back(d.evaluate(p));
  return jet;
}

SecondJet DerivativeTable::second(std::span<const Complex> p) const {
  if (!has_second_)
    throw Error(ErrorCode::InvalidArgument, "derivative table built without second derivatives");
  SecondJet jet;
  jet.first = first(p);
  for (const auto& d : zz_) jet.zz.push_back(d.evaluate(p));
  for (const auto& d : zzbar_) jet.zzbar.push_back(d.evaluate(p));
  for (const auto& d : zbarzbar_) jet.zbarzbar.push_back(d.evaluate(p));
  return jet;
}

}  // namespace milnor
