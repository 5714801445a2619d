#pragma once

// The rational function field K = F_q(t): elements, places, divisors,
// heights and the largest-place-degree function delta.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "poly_fq.hpp"

namespace ffgpd {

/// num/den in lowest terms with den monic. Zero is 0/1.
class RatFunc {
 public:
  explicit RatFunc(const FieldPtr& field) : num_(field), den_(PolyFq::one(field)) {}

  RatFunc(PolyFq num) : num_(std::move(num)), den_(PolyFq::one(num_.field())) {}  // NOLINT(google-explicit-constructor)

  RatFunc(PolyFq num, PolyFq den) : num_(std::move(num)), den_(std::move(den)) {
    require_same_field(num_.field(), den_.field());
    detail::require(!den_.is_zero(), "rational function with zero denominator");
    normalize();
  }

  /// Trusts the caller: gcd(num, den) = 1 and den monic.
  static RatFunc from_coprime(PolyFq num, PolyFq den) {
    RatFunc r(num.field());
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static RatFunc constant(const FqElem& c) { return RatFunc(PolyFq::constant(c)); }
  static RatFunc constant(const FieldPtr& f, std::uint32_t c) { return RatFunc(PolyFq::constant(f, c)); }
  static RatFunc one(const FieldPtr& f) { return constant(f, 1); }
  static RatFunc t(const FieldPtr& f) { return RatFunc(PolyFq::t(f)); }

  const PolyFq& num() const { return num_; }
  const PolyFq& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  /// The constant value; requires is_constant().
  FqElem constant_value() const {
    detail::require(is_constant(), "not a constant");
    return num_.coefficient(0);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Enumeration order: denominator first, then numerator (canonical
  /// polynomial order on each).
  friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
    if (auto c = a.den_ <=> b.den_; c != 0) return c;
    return a.num_ <=> b.num_;
  }

  RatFunc operator-() const { return from_coprime(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
    if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
    // Cross-cancel first to keep the gcd small.
    const PolyFq g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return from_coprime_scaled(exact_div(a.num_, g1) * exact_div(b.num_, g2),
                               exact_div(a.den_, g2) * exact_div(b.den_, g1));
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    detail::require(!is_zero(), "division by zero in K");
    return from_coprime_scaled(den_, num_);
  }

  RatFunc scaled(const FqElem& c) const { return *this * constant(c); }

 private:
  // num/den coprime, den arbitrary nonzero.
  static RatFunc from_coprime_scaled(PolyFq num, PolyFq den) {
    const std::uint32_t inv = den.ctx().inv(den.lead());
    return from_coprime(num.scaled(inv), den.scaled(inv));
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = PolyFq::one(num_.field());
      return;
    }
    const PolyFq g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    if (!den_.is_monic()) {
      const std::uint32_t inv = den_.ctx().inv(den_.lead());
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  PolyFq num_;
  PolyFq den_;
};

enum class RatOp { add, sub, mul, div };

inline RatFunc rf_arith(const RatFunc& a, const RatFunc& b, RatOp op) {
  switch (op) {
    case RatOp::add: return a + b;
    case RatOp::sub: return a - b;
    case RatOp::mul: return a * b;
    case RatOp::div: return a / b;
  }
  throw InvariantError("unknown rational-function operation");
}

inline RatFunc pow(RatFunc base, std::int64_t e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  RatFunc r = RatFunc::one(base.field());
  auto u = static_cast<std::uint64_t>(e);
  while (u) {
    if (u & 1) r *= base;
    u >>= 1;
    if (u) base *= base;
  }
  return r;
}

/// f^{q_power} for q_power a power of q, computed as f(t^{q_power}).
inline RatFunc frobenius(const RatFunc& f, std::uint64_t q_power) {
  return RatFunc::from_coprime(frobenius(f.num(), q_power), frobenius(f.den(), q_power));
}

/// h(f) = deg (f)_0 = max(deg num, deg den).
inline std::uint32_t height(const RatFunc& f) {
  detail::require(!f.is_zero(), "height of zero is undefined");
  return static_cast<std::uint32_t>(std::max(f.num().degree(), f.den().degree()));
}

/// A place of F_q(t): a monic irreducible of F_q[t] or the place at infinity.
class Place {
 public:
  static Place finite(PolyFq prime) { return Place(std::move(prime)); }
  static Place infinity() { return Place(); }

  bool is_infinity() const { return !prime_.has_value(); }
  const PolyFq& prime() const {
    detail::require(prime_.has_value(), "the infinite place has no prime polynomial");
    return *prime_;
  }
  std::uint32_t degree() const { return is_infinity() ? 1u : static_cast<std::uint32_t>(prime_->degree()); }

  friend bool operator==(const Place& a, const Place& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return *a.prime_ == *b.prime_;
  }

  /// Finite places in canonical order, then infinity.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() <=> b.is_infinity();
    return *a.prime_ <=> *b.prime_;
  }

 private:
  Place() = default;
  explicit Place(PolyFq prime) : prime_(std::move(prime)) {}
  std::optional<PolyFq> prime_;
};

/// A formal integer combination of places with nonzero coefficients.
class Divisor {
 public:
  using Map = std::map<Place, std::int64_t>;

  void add(const Place& p, std::int64_t m) {
    if (m == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, m);
    if (!inserted && (it->second += m) == 0) terms_.erase(it);
  }

  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::int64_t multiplicity(const Place& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
  }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (const auto& [p, m] : terms_) d += m * p.degree();
    return d;
  }

  /// Degree of the positive part (the zero divisor for principal divisors).
  std::int64_t positive_degree() const {
    std::int64_t d = 0;
    for (const auto& [p, m] : terms_)
      if (m > 0) d += m * p.degree();
    return d;
  }

  std::int64_t negative_degree() const { return positive_degree() - degree(); }

  std::vector<Place> support() const {
    std::vector<Place> s;
    for (const auto& [p, m] : terms_) s.push_back(p);
    return s;
  }

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  Map terms_;
};

/// The principal divisor (f) = (f)_0 - (f)_inf.
inline Divisor divisor_of(const RatFunc& f, std::uint64_t seed = 0) {
  detail::require(!f.is_zero(), "divisor of zero is undefined");
  Divisor d;
  if (f.num().degree() > 0)
    for (const auto& [prime, e] : factor(f.num(), seed).factors) d.add(Place::finite(prime), e);
  if (f.den().degree() > 0)
    for (const auto& [prime, e] : factor(f.den(), seed).factors) d.add(Place::finite(prime), -std::int64_t(e));
  d.add(Place::infinity(), std::int64_t(f.den().degree()) - f.num().degree());
  return d;
}

/// Largest degree of a place in the support of (f). Undefined for constants.
inline std::uint32_t delta(const RatFunc& f) {
  detail::require(!f.is_zero() && !f.is_constant(), "delta is undefined for constants");
  std::uint32_t best = f.num().degree() != f.den().degree() ? 1u : 0u;
  if (f.num().degree() > 0) best = std::max(best, max_factor_degree(f.num()));
  if (f.den().degree() > 0) best = std::max(best, max_factor_degree(f.den()));
  return best;
}

/// Largest support degree, with 0 for constants (empty support).
inline std::uint32_t delta_or_zero(const RatFunc& f) {
  return f.is_constant() ? 0u : delta(f);
}

/// f is a p-th power in K iff its numerator and denominator are p-th powers in F_q[t].
inline bool is_pth_power(const RatFunc& f) {
  detail::require(!f.is_zero(), "is_pth_power of zero");
  return is_pth_power(f.num()) && is_pth_power(f.den());
}

inline RatFunc pth_root(const RatFunc& f) {
  detail::require(!f.is_zero() && is_pth_power(f), "rational function is not a p-th power");
  return RatFunc::from_coprime(pth_root(f.num()), pth_root(f.den()));
}

/// Every f with h(f) = height, in enumeration order (denominator degree,
/// denominator, numerator). Each value appears exactly once.
inline std::vector<RatFunc> enumerate_f(const FieldPtr& field, std::uint32_t height) {
  detail::require(height >= 1, "exhaustive enumeration needs height >= 1");
  const std::uint64_t q = field->q();
  const std::uint64_t q_h = detail::checked_pow(q, height);
  const std::uint64_t q_h1 = detail::checked_pow(q, height + 1);
  std::vector<RatFunc> out;
  for (std::uint32_t dd = 0; dd <= height; ++dd) {
    const std::uint64_t dens = detail::checked_pow(q, dd);
    const std::uint64_t first_num = dd < height ? q_h : 1;
    for (std::uint64_t di = 0; di < dens; ++di) {
      const PolyFq den = PolyFq::monic_from_index(field, dd, di);
      for (std::uint64_t ni = first_num; ni < q_h1; ++ni) {
        PolyFq num = PolyFq::from_index(field, height + 1, ni);
        if (dd > 0 && !gcd(num, den).is_one()) continue;
        out.push_back(RatFunc::from_coprime(std::move(num), den));
      }
    }
  }
  return out;
}

/// `count` draws, uniform over normalized f with h(f) = height (rejection
/// sampling on (num, den) pairs). Duplicates are possible.
inline std::vector<RatFunc> sample_f(const FieldPtr& field, std::uint32_t height, std::size_t count, std::uint64_t seed) {
  detail::require(height >= 1, "sampling needs height >= 1");
  std::mt19937_64 rng(seed);
  std::vector<RatFunc> out;
  out.reserve(count);
  const std::uint64_t q = field->q();
  // Weight denominator degrees by their number of monic polynomials.
  std::vector<double> weights;
  for (std::uint32_t d = 0; d <= height; ++d) weights.push_back(static_cast<double>(detail::checked_pow(q, d)));
  std::discrete_distribution<std::uint32_t> deg_dist(weights.begin(), weights.end());
  while (out.size() < count) {
    const std::uint32_t dd = deg_dist(rng);
    PolyFq den = random_monic(field, dd, rng);
    PolyFq num = random_poly(field, height, rng);
    if (num.is_zero()) continue;
    if (static_cast<std::uint32_t>(std::max(num.degree(), den.degree())) != height) continue;
    if (!gcd(num, den).is_one()) continue;
    out.push_back(RatFunc::from_coprime(std::move(num), std::move(den)));
  }
  return out;
}

/// Total degree of all places of degree <= d, the infinite place included.
inline std::uint64_t places_degree_sum(std::uint64_t q, std::uint32_t d) {
  detail::require(d >= 1, "places_degree_sum needs d >= 1");
  std::uint64_t total = 1;
  for (std::uint32_t e = 1; e <= d; ++e) total += e * count_irreducibles(q, e);
  return total;
}

}  // namespace ffgpd
