#pragma once

// Polynomials F in K[x], K = F_q(t), and the separability classifier.

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "rational_function.hpp"

namespace ffgpd {

class PolyOverK {
 public:
  explicit PolyOverK(FieldPtr field) : field_(std::move(field)) {}

  PolyOverK(FieldPtr field, std::vector<RatFunc> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_) require_same_field(field_, c.field());
    trim();
  }

  static PolyOverK constant(const RatFunc& c) { return PolyOverK(c.field(), {c}); }

  static PolyOverK monomial(const RatFunc& c, std::size_t deg) {
    std::vector<RatFunc> v(deg + 1, RatFunc(c.field()));
    v[deg] = c;
    return PolyOverK(c.field(), std::move(v));
  }

  static PolyOverK x(const FieldPtr& f) { return monomial(RatFunc::one(f), 1); }

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  RatFunc operator[](std::size_t i) const { return i < c_.size() ? c_[i] : RatFunc(field_); }
  const RatFunc& lead() const {
    detail::require(!c_.empty(), "leading coefficient of the zero polynomial");
    return c_.back();
  }
  const std::vector<RatFunc>& coeffs() const { return c_; }

  /// True when every coefficient lies in F_q.
  bool has_constant_coefficients() const {
    for (const auto& c : c_)
      if (!c.is_constant()) return false;
    return true;
  }

  friend bool operator==(const PolyOverK& a, const PolyOverK& b) {
    return a.c_ == b.c_ && same_field(a.field_, b.field_);
  }

  PolyOverK operator-() const {
    PolyOverK r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  PolyOverK& operator+=(const PolyOverK& o) {
    require_same_field(field_, o.field_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RatFunc(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  PolyOverK& operator-=(const PolyOverK& o) {
    require_same_field(field_, o.field_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RatFunc(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  friend PolyOverK operator+(PolyOverK a, const PolyOverK& b) { return a += b; }
  friend PolyOverK operator-(PolyOverK a, const PolyOverK& b) { return a -= b; }

  friend PolyOverK operator*(const PolyOverK& a, const PolyOverK& b) {
    require_same_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return PolyOverK(a.field_);
    std::vector<RatFunc> out(a.c_.size() + b.c_.size() - 1, RatFunc(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return PolyOverK(a.field_, std::move(out));
  }

  PolyOverK& operator*=(const PolyOverK& o) { return *this = *this * o; }

  PolyOverK scaled(const RatFunc& s) const {
    if (s.is_zero()) return PolyOverK(field_);
    PolyOverK r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  PolyOverK monic() const {
    detail::require(!is_zero(), "monic() of the zero polynomial");
    return is_monic() ? *this : scaled(lead().inverse());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FieldPtr field_;
  std::vector<RatFunc> c_;
};

inline std::pair<PolyOverK, PolyOverK> divrem(const PolyOverK& a, const PolyOverK& b) {
  require_same_field(a.field(), b.field());
  detail::require(!b.is_zero(), "division by the zero polynomial in K[x]");
  if (a.degree() < b.degree()) return {PolyOverK(a.field()), a};
  std::vector<RatFunc> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const RatFunc lead_inv = bc.back().inverse();
  std::vector<RatFunc> quo(r.size() - db, RatFunc(a.field()));
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i].is_zero()) continue;
    const RatFunc c = r[i] * lead_inv;
    quo[i - db] = c;
    for (std::size_t j = 0; j < db; ++j)
      if (!bc[j].is_zero()) r[i - db + j] -= c * bc[j];
    r[i] = RatFunc(a.field());
  }
  r.resize(db, RatFunc(a.field()));
  return {PolyOverK(a.field(), std::move(quo)), PolyOverK(a.field(), std::move(r))};
}

inline PolyOverK operator/(const PolyOverK& a, const PolyOverK& b) { return divrem(a, b).first; }
inline PolyOverK operator%(const PolyOverK& a, const PolyOverK& b) { return divrem(a, b).second; }

inline PolyOverK exact_divide(const PolyOverK& a, const PolyOverK& b) {
  auto [quo, rem] = divrem(a, b);
  detail::require(rem.is_zero(), "inexact division in K[x]");
  return quo;
}

/// Monic gcd in K[x].
inline PolyOverK gcd(PolyOverK a, PolyOverK b) {
  require_same_field(a.field(), b.field());
  detail::require(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    PolyOverK r = a % b;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

inline PolyOverK derivative(const PolyOverK& a) {
  if (a.degree() < 1) return PolyOverK(a.field());
  std::vector<RatFunc> v;
  v.reserve(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i)
    v.push_back(a.coeffs()[i].scaled(FqElem::from_int(a.field(), static_cast<std::int64_t>(i % a.field()->p()))));
  return PolyOverK(a.field(), std::move(v));
}

/// F(f) by Horner's rule.
inline RatFunc evaluate(const PolyOverK& F, const RatFunc& f) {
  require_same_field(F.field(), f.field());
  RatFunc acc(F.field());
  for (std::size_t i = F.coeffs().size(); i-- > 0;) acc = acc * f + F.coeffs()[i];
  return acc;
}

// ---------------------------------------------------------------------------
// Separability.

struct SeparableSquarefree {};
struct NotSquarefree {};
/// F is squarefree with an inseparable factor; F = separable_part * inseparable_part.
struct InseparablePresent {
  PolyOverK separable_part;
  PolyOverK inseparable_part;
};
/// Inconclusive. Not produced for K = F_q(t), where the subfield test below decides.
struct SeparabilityUnknown {};

using SeparabilityVerdict = std::variant<SeparableSquarefree, InseparablePresent, NotSquarefree, SeparabilityUnknown>;

namespace detail {

/// c = sum_{r<p} t^r c_r with c_r in K^p = F_q(t^p).
inline std::vector<RatFunc> kp_components(const RatFunc& c) {
  const std::uint32_t p = c.field()->p();
  std::vector<RatFunc> out(p, RatFunc(c.field()));
  if (c.is_zero()) return out;
  // c = num * den^{p-1} / den^p
  const PolyFq spread = c.num() * pow(c.den(), p - 1);
  const PolyFq den_p = pow(c.den(), p);
  for (std::uint32_t r = 0; r < p; ++r) {
    std::vector<PolyFq::Coeff> v(spread.coeffs().size(), 0);
    bool any = false;
    for (std::size_t i = r; i < spread.coeffs().size(); i += p) {
      v[i - r] = spread[i];
      any = any || spread[i] != 0;
    }
    if (any) out[r] = RatFunc(PolyFq(c.field(), std::move(v)), den_p);
  }
  return out;
}

/// E = sum_r t^r E_r with E_r in K^p[x]; returns the monic gcd of the nonzero E_r.
inline PolyOverK kp_content(const PolyOverK& E) {
  const std::uint32_t p = E.field()->p();
  std::vector<std::vector<RatFunc>> parts(p, std::vector<RatFunc>(E.coeffs().size(), RatFunc(E.field())));
  for (std::size_t i = 0; i < E.coeffs().size(); ++i) {
    auto comps = kp_components(E.coeffs()[i]);
    for (std::uint32_t r = 0; r < p; ++r) parts[r][i] = std::move(comps[r]);
  }
  PolyOverK g(E.field());
  for (auto& part : parts) {
    PolyOverK Er(E.field(), std::move(part));
    if (Er.is_zero()) continue;
    g = g.is_zero() ? Er.monic() : gcd(g, Er);
  }
  return g;
}

inline bool is_poly_in_xp(const PolyOverK& a, std::size_t p) {
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    if (i % p != 0 && !a.coeffs()[i].is_zero()) return false;
  return true;
}

inline PolyOverK depress_xp(const PolyOverK& a, std::size_t p) {
  std::vector<RatFunc> v;
  for (std::size_t i = 0; i < a.coeffs().size(); i += p) v.push_back(a.coeffs()[i]);
  return PolyOverK(a.field(), std::move(v));
}

}  // namespace detail

/// Decides whether F is separable+squarefree, squarefree with an inseparable
/// factor, or not squarefree.
///
/// With D = gcd(F, F') and S = F/D: F squarefree iff gcd(S, D) = 1,
/// D = E(x^p), E squarefree, and no irreducible factor of E has all its
/// coefficients in K^p. The last condition holds iff the components E_r of
/// E = sum t^r E_r (E_r in K^p[x], r < p) have trivial common gcd; E is
/// checked recursively.
inline SeparabilityVerdict separability_classify(const PolyOverK& F) {
  detail::require(F.degree() >= 1, "separability_classify needs a nonconstant polynomial");
  const std::size_t p = F.field()->p();
  const PolyOverK Fm = F.monic();
  const PolyOverK dF = derivative(Fm);
  const PolyOverK D = dF.is_zero() ? Fm : gcd(Fm, dF);
  if (D.degree() == 0) return SeparableSquarefree{};
  const PolyOverK S = exact_divide(Fm, D);
  if (S.degree() > 0 && gcd(S, D).degree() > 0) return NotSquarefree{};
  if (!detail::is_poly_in_xp(D, p)) return NotSquarefree{};
  const PolyOverK E = detail::depress_xp(D, p);
  if (std::holds_alternative<NotSquarefree>(separability_classify(E))) return NotSquarefree{};
  if (detail::kp_content(E).degree() > 0) return NotSquarefree{};
  return InseparablePresent{S, D};
}

/// gcd(F, F') = 1.
inline bool is_separable_squarefree(const PolyOverK& F) {
  if (F.degree() < 1) return false;
  const PolyOverK dF = derivative(F);
  return !dF.is_zero() && gcd(F, dF).degree() == 0;
}

}  // namespace ffgpd
