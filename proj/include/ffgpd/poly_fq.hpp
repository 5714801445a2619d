#pragma once

// Dense univariate polynomials over F_q in the variable t.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "finite_field.hpp"

namespace ffgpd {

class PolyFq {
 public:
  using Coeff = std::uint32_t;
  /// Degree reported for the zero polynomial (stands in for -infinity).
  static constexpr int kZeroDegree = -1;

  explicit PolyFq(FieldPtr field) : field_(std::move(field)) {
    detail::require(field_ != nullptr, "PolyFq needs a field");
  }

  PolyFq(FieldPtr field, std::vector<Coeff> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    detail::require(field_ != nullptr, "PolyFq needs a field");
    for (Coeff x : c_) detail::require(x < field_->q(), "PolyFq coefficient out of range");
    trim();
  }

  static PolyFq constant(const FieldPtr& f, Coeff c) { return PolyFq(f, std::vector<Coeff>{c}); }
  static PolyFq constant(const FqElem& c) { return constant(c.field(), c.value()); }
  static PolyFq one(const FieldPtr& f) { return constant(f, 1); }

  static PolyFq monomial(const FieldPtr& f, Coeff c, std::size_t deg) {
    std::vector<Coeff> v(deg + 1, 0);
    v[deg] = c;
    return PolyFq(f, std::move(v));
  }

  /// The coordinate t.
  static PolyFq t(const FieldPtr& f) { return monomial(f, 1, 1); }

  /// The monic polynomial of degree `deg` whose lower coefficients are the
  /// base-q digits of `index` (low digit first).
  static PolyFq monic_from_index(const FieldPtr& f, std::size_t deg, std::uint64_t index) {
    std::vector<Coeff> v(deg + 1, 0);
    for (std::size_t i = 0; i < deg; ++i) {
      v[i] = static_cast<Coeff>(index % f->q());
      index /= f->q();
    }
    v[deg] = 1;
    return PolyFq(f, std::move(v));
  }

  /// The polynomial of degree < `len` whose coefficients are the base-q
  /// digits of `index`.
  static PolyFq from_index(const FieldPtr& f, std::size_t len, std::uint64_t index) {
    std::vector<Coeff> v(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = static_cast<Coeff>(index % f->q());
      index /= f->q();
    }
    return PolyFq(f, std::move(v));
  }

  const FieldPtr& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Coeff lead() const { return c_.empty() ? 0 : c_.back(); }
  FqElem coefficient(std::size_t i) const { return {field_, (*this)[i]}; }
  FqElem leading() const { return {field_, lead()}; }
  std::span<const Coeff> coeffs() const { return c_; }

  friend bool operator==(const PolyFq& a, const PolyFq& b) {
    return a.c_ == b.c_ && same_field(a.field_, b.field_);
  }

  /// Canonical order: by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const PolyFq& a, const PolyFq& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    return std::strong_ordering::equal;
  }

  PolyFq operator-() const {
    PolyFq r = *this;
    for (auto& x : r.c_) x = field_->neg(x);
    return r;
  }

  PolyFq& operator+=(const PolyFq& o) {
    require_same_field(field_, o.field_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
    trim();
    return *this;
  }

  PolyFq& operator-=(const PolyFq& o) {
    require_same_field(field_, o.field_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
  }

  friend PolyFq operator+(PolyFq a, const PolyFq& b) { return a += b; }
  friend PolyFq operator-(PolyFq a, const PolyFq& b) { return a -= b; }

  friend PolyFq operator*(const PolyFq& a, const PolyFq& b) {
    require_same_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return PolyFq(a.field_);
    const FieldCtx& F = *a.field_;
    const std::size_t n = a.c_.size(), m = b.c_.size();
    std::vector<Coeff> out(n + m - 1, 0);
    if (F.k() == 1) {
      // Products are below 2^32, so a 64-bit accumulator never overflows here.
      std::vector<std::uint64_t> acc(n + m - 1, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t ai = a.c_[i];
        if (ai == 0) continue;
        std::uint64_t* dst = acc.data() + i;
        for (std::size_t j = 0; j < m; ++j) dst[j] += ai * b.c_[j];
      }
      const std::uint64_t p = F.p();
      for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Coeff>(acc[i] % p);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) out[i + j] = F.add(out[i + j], F.mul(a.c_[i], b.c_[j]));
      }
    }
    return PolyFq(a.field_, std::move(out));
  }

  PolyFq& operator*=(const PolyFq& o) { return *this = *this * o; }

  /// Multiply every coefficient by the scalar c.
  PolyFq scaled(Coeff c) const {
    if (c == 0) return PolyFq(field_);
    PolyFq r = *this;
    for (auto& x : r.c_) x = field_->mul(x, c);
    return r;
  }

  PolyFq scaled(const FqElem& c) const {
    require_same_field(field_, c.field());
    return scaled(c.value());
  }

  /// Multiply by t^n.
  PolyFq shifted(std::size_t n) const {
    if (is_zero()) return *this;
    std::vector<Coeff> v(n, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return PolyFq(field_, std::move(v));
  }

  PolyFq monic() const {
    detail::require(!is_zero(), "monic() of the zero polynomial");
    return scaled(field_->inv(lead()));
  }

  FqElem operator()(const FqElem& x) const {
    require_same_field(field_, x.field());
    Coeff acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x.value()), c_[i]);
    return {field_, acc};
  }

  /// c(t) -> c(t^m).
  PolyFq stretched(std::size_t m) const {
    if (c_.size() <= 1 || m == 1) return *this;
    std::vector<Coeff> v((c_.size() - 1) * m + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * m] = c_[i];
    return PolyFq(field_, std::move(v));
  }

  /// Raw mutable access for kernels in this library; callers must keep
  /// coefficients reduced and call normalize() afterwards.
  std::vector<Coeff>& raw() { return c_; }
  void normalize() { trim(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FieldPtr field_;
  std::vector<Coeff> c_;
};

/// Quotient and remainder with a = q*b + r, deg r < deg b.
inline std::pair<PolyFq, PolyFq> divrem(const PolyFq& a, const PolyFq& b) {
  require_same_field(a.field(), b.field());
  detail::require(!b.is_zero(), "polynomial division by zero");
  const FieldCtx& F = a.ctx();
  if (a.degree() < b.degree()) return {PolyFq(a.field()), a};
  std::vector<PolyFq::Coeff> r(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const PolyFq::Coeff lead_inv = F.inv(bc.back());
  std::vector<PolyFq::Coeff> quo(r.size() - db, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    const PolyFq::Coeff c = F.mul(r[i], lead_inv);
    quo[i - db] = c;
    const std::size_t base = i - db;
    if (F.k() == 1) {
      const std::uint64_t p = F.p();
      const std::uint64_t nc = p - c;
      for (std::size_t j = 0; j < db; ++j)
        r[base + j] = static_cast<PolyFq::Coeff>((r[base + j] + nc * bc[j]) % p);
    } else {
      const PolyFq::Coeff nc = F.neg(c);
      for (std::size_t j = 0; j < db; ++j) r[base + j] = F.add(r[base + j], F.mul(nc, bc[j]));
    }
    r[i] = 0;
  }
  r.resize(db);
  return {PolyFq(a.field(), std::move(quo)), PolyFq(a.field(), std::move(r))};
}

inline PolyFq operator/(const PolyFq& a, const PolyFq& b) { return divrem(a, b).first; }
inline PolyFq operator%(const PolyFq& a, const PolyFq& b) { return divrem(a, b).second; }

/// a / b, requiring the division to be exact.
inline PolyFq exact_div(const PolyFq& a, const PolyFq& b) {
  auto [quo, rem] = divrem(a, b);
  detail::require(rem.is_zero(), "inexact polynomial division");
  return quo;
}

/// Monic greatest common divisor.
inline PolyFq gcd(PolyFq a, PolyFq b) {
  require_same_field(a.field(), b.field());
  detail::require(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    PolyFq r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline PolyFq derivative(const PolyFq& a) {
  const FieldCtx& F = a.ctx();
  if (a.degree() < 1) return PolyFq(a.field());
  std::vector<PolyFq::Coeff> v(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), a[i]);
  return PolyFq(a.field(), std::move(v));
}

inline PolyFq mul_mod(const PolyFq& a, const PolyFq& b, const PolyFq& m) { return (a * b) % m; }

inline PolyFq pow_mod(PolyFq base, std::uint64_t e, const PolyFq& m) {
  PolyFq result = PolyFq::one(m.field()) % m;
  base = base % m;
  while (e) {
    if (e & 1) result = mul_mod(result, base, m);
    e >>= 1;
    if (e) base = mul_mod(base, base, m);
  }
  return result;
}

inline PolyFq pow(PolyFq base, std::uint64_t e) {
  PolyFq result = PolyFq::one(base.field());
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// a^q computed as a(t^q): coefficients lie in F_q and are fixed by Frobenius.
inline PolyFq frobenius(const PolyFq& a, std::uint64_t q_power) { return a.stretched(static_cast<std::size_t>(q_power)); }

/// True iff a = b^p for some b (F_q is perfect, so this means a' = 0).
inline bool is_pth_power(const PolyFq& a) {
  const std::uint32_t p = a.ctx().p();
  const auto c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i % p != 0 && c[i] != 0) return false;
  return true;
}

/// The b with b^p = a; requires is_pth_power(a).
inline PolyFq pth_root(const PolyFq& a) {
  detail::require(is_pth_power(a), "polynomial is not a p-th power");
  const FieldCtx& F = a.ctx();
  const std::uint32_t p = F.p();
  if (a.is_zero()) return a;
  std::vector<PolyFq::Coeff> v(a.coeffs().size() / p + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); i += p) v[i / p] = F.pth_root(a[i]);
  return PolyFq(a.field(), std::move(v));
}

/// Uniformly random polynomial of degree <= max_deg (possibly zero).
template <class Rng>
PolyFq random_poly(const FieldPtr& f, std::size_t max_deg, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f->q() - 1);
  std::vector<PolyFq::Coeff> v(max_deg + 1);
  for (auto& x : v) x = dist(rng);
  return PolyFq(f, std::move(v));
}

/// Uniformly random monic polynomial of degree exactly deg.
template <class Rng>
PolyFq random_monic(const FieldPtr& f, std::size_t deg, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f->q() - 1);
  std::vector<PolyFq::Coeff> v(deg + 1);
  for (auto& x : v) x = dist(rng);
  v[deg] = 1;
  return PolyFq(f, std::move(v));
}

}  // namespace ffgpd
