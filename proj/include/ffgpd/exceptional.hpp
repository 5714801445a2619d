#pragma once

// Frobenius powering modulo F in K[x] and the exceptional-polynomial
// classifier: F is exceptional iff it divides a nonzero x^{q^n} - sigma x + tau.
//
// The powering runs in an integral model. With L the monic lcm of the
// coefficient denominators of a monic F of degree m, the substitution
// y = L x turns F into the monic
//     Ft(y) = L^m F(y / L) = y^m + sum_i a_i L^{m-i} y^i   in F_q[t][y],
// and x^Q mod F = R(L x) / L^Q whenever y^Q = R(y) mod Ft. Raising R to the
// q-th power only substitutes t -> t^q in its coefficients, so each step
// costs a handful of big-by-small products in F_q[t] and no gcds.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "poly_over_k.hpp"

namespace ffgpd {

namespace detail {

inline PolyFq lcm(const PolyFq& a, const PolyFq& b) { return exact_div(a * b, gcd(a, b)).monic(); }

/// y = L x model of a monic F.
struct IntegralModel {
  PolyFq scale;                      // L
  std::vector<PolyFq> coeffs;        // Ft, monic, size m+1
  std::size_t degree() const { return coeffs.size() - 1; }
};

inline IntegralModel integral_model(const PolyOverK& F) {
  require(F.is_monic(), "Frobenius powering needs a monic F");
  require(F.degree() >= 1, "Frobenius powering needs deg F >= 1");
  const FieldPtr& field = F.field();
  PolyFq L = PolyFq::one(field);
  for (const auto& c : F.coeffs()) L = lcm(L, c.den());
  const auto m = static_cast<std::size_t>(F.degree());
  IntegralModel model{L, std::vector<PolyFq>(m + 1, PolyFq(field))};
  model.coeffs[m] = PolyFq::one(field);
  for (std::size_t i = 0; i < m; ++i) {
    const RatFunc& a = F.coeffs()[i];
    // a_i L^{m-i} = num (L / den) L^{m-i-1}
    if (!a.is_zero()) model.coeffs[i] = a.num() * exact_div(L, a.den()) * pow(L, m - i - 1);
  }
  return model;
}

}  // namespace detail

/// Iterates r_n = x^{q^n} mod F for a fixed monic F, n = 0, 1, 2, ...
class FrobeniusPowers {
 public:
  explicit FrobeniusPowers(const PolyOverK& F) : F_(F), model_(detail::integral_model(F)) {
    const FieldPtr& field = F.field();
    const std::size_t m = model_.degree();
    rem_.assign(m, PolyFq(field));
    if (m >= 2) {
      rem_[1] = PolyFq::one(field);
    } else {
      rem_[0] = -model_.coeffs[0];
    }
    initial_ = rem_;
  }

  std::uint32_t n() const { return n_; }
  /// q^n.
  std::uint64_t exponent() const { return exponent_; }

  /// Advances r_n to r_{n+1} = r_n^q mod F.
  void step() {
    const FieldPtr& field = F_.field();
    const std::uint64_t q = field->q();
    detail::require(exponent_ <= UINT64_MAX / q, "Frobenius exponent q^n overflows");
    const std::size_t m = model_.degree();
    std::vector<PolyFq> big((m - 1) * q + 1, PolyFq(field));
    for (std::size_t i = 0; i < m; ++i) big[i * q] = frobenius(rem_[i], q);
    for (std::size_t j = big.size(); j-- > m;) {
      if (big[j].is_zero()) continue;
      const PolyFq c = big[j];
      for (std::size_t i = 0; i < m; ++i)
        if (!model_.coeffs[i].is_zero()) big[j - m + i] -= c * model_.coeffs[i];
    }
    big.resize(m, PolyFq(field));
    rem_ = std::move(big);
    exponent_ *= q;
    ++n_;
  }

  /// Degree in x of r_n (-1 when r_n = 0).
  int remainder_degree() const {
    for (std::size_t i = rem_.size(); i-- > 0;)
      if (!rem_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

  /// r_n = x mod F, i.e. F divides x^{q^n} - x.
  bool is_identity() const {
    // R_n(Lx)/L^Q == R_0(Lx)/L  <=>  rho_{n,i} L == rho_{0,i} L^Q for all i.
    const PolyFq LQ = frobenius(model_.scale, exponent_);
    for (std::size_t i = 0; i < rem_.size(); ++i)
      if (!(rem_[i] * model_.scale == initial_[i] * LQ)) return false;
    return true;
  }

  /// r_n = w for a polynomial w of degree < deg F.
  bool equals(const PolyOverK& w) const {
    detail::require(w.degree() < static_cast<int>(rem_.size()), "comparison target is not reduced mod F");
    const PolyFq LQ = frobenius(model_.scale, exponent_);
    PolyFq Li = PolyFq::one(F_.field());
    for (std::size_t i = 0; i < rem_.size(); ++i) {
      const RatFunc wi = w[i];
      // rho_i L^i / L^Q == num/den  <=>  rho_i L^i den == num L^Q
      if (!(rem_[i] * Li * wi.den() == wi.num() * LQ)) return false;
      Li = Li * model_.scale;
    }
    return true;
  }

  /// Coefficient i of r_n as an element of K.
  RatFunc coefficient(std::size_t i) const {
    if (i >= rem_.size() || rem_[i].is_zero()) return RatFunc(F_.field());
    return RatFunc(rem_[i] * pow(model_.scale, i), frobenius(model_.scale, exponent_));
  }

  PolyOverK remainder() const {
    std::vector<RatFunc> v;
    for (std::size_t i = 0; i < rem_.size(); ++i) v.push_back(coefficient(i));
    return PolyOverK(F_.field(), std::move(v));
  }

 private:
  PolyOverK F_;
  detail::IntegralModel model_;
  std::vector<PolyFq> rem_;
  std::vector<PolyFq> initial_;
  std::uint32_t n_ = 0;
  std::uint64_t exponent_ = 1;
};

/// x^{q^n} mod F for monic F.
inline PolyOverK frobenius_power_mod(const PolyOverK& F, std::uint32_t n) {
  FrobeniusPowers it(F);
  for (std::uint32_t i = 0; i < n; ++i) it.step();
  return it.remainder();
}

/// Witness (n, sigma, tau) that F divides the nonzero x^{q^n} - sigma x + tau.
/// Instances exist only after the divisibility has been checked exactly.
class ExceptionalCert {
 public:
  /// Verifies the certificate for F (any nonzero scalar multiple is fine).
  static ExceptionalCert verified(const PolyOverK& F, std::uint32_t n, RatFunc sigma, RatFunc tau);

  std::uint32_t n() const { return n_; }
  const RatFunc& sigma() const { return sigma_; }
  const RatFunc& tau() const { return tau_; }

  /// G = x^{q^n} - sigma x + tau.
  PolyOverK dividend() const {
    const FieldPtr& f = sigma_.field();
    const std::uint64_t Q = detail::checked_pow(f->q(), n_);
    return PolyOverK::monomial(RatFunc::one(f), static_cast<std::size_t>(Q)) -
           PolyOverK::monomial(sigma_, 1) + PolyOverK::constant(tau_);
  }

  friend bool operator==(const ExceptionalCert&, const ExceptionalCert&) = default;

 private:
  ExceptionalCert(std::uint32_t n, RatFunc sigma, RatFunc tau)
      : n_(n), sigma_(std::move(sigma)), tau_(std::move(tau)) {}

  std::uint32_t n_;
  RatFunc sigma_;
  RatFunc tau_;
};

/// True iff x^{q^n} - sigma x + tau is nonzero and divisible by F.
inline bool certificate_holds(const PolyOverK& F, std::uint32_t n, const RatFunc& sigma, const RatFunc& tau) {
  detail::require(F.degree() >= 1, "certificate check needs a nonconstant F");
  if (n == 0 && sigma.is_one() && tau.is_zero()) return false;  // the dividend vanishes
  const PolyOverK Fm = F.monic();
  FrobeniusPowers it(Fm);
  for (std::uint32_t i = 0; i < n; ++i) it.step();
  // x^{q^n} = sigma x - tau  (mod F)
  const PolyOverK target = (PolyOverK::monomial(sigma, 1) - PolyOverK::constant(tau)) % Fm;
  return it.equals(target);
}

inline ExceptionalCert ExceptionalCert::verified(const PolyOverK& F, std::uint32_t n, RatFunc sigma, RatFunc tau) {
  require_same_field(F.field(), sigma.field());
  require_same_field(F.field(), tau.field());
  detail::require(certificate_holds(F, n, sigma, tau), "F does not divide x^{q^n} - sigma x + tau");
  return ExceptionalCert(n, std::move(sigma), std::move(tau));
}

/// Honest bounded verdict: no certificate with 1 <= n <= max_n exists.
struct NonExceptionalUpTo {
  std::uint32_t max_n;
  friend bool operator==(const NonExceptionalUpTo&, const NonExceptionalUpTo&) = default;
};

using ExceptionalVerdict = std::variant<NonExceptionalUpTo, ExceptionalCert>;

/// min((deg F)!, 12).
inline std::uint32_t default_max_n(int degree) {
  std::uint64_t f = 1;
  for (int i = 2; i <= degree && f < 12; ++i) f *= static_cast<std::uint64_t>(i);
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(f, 12));
}

/// Searches n = 1..max_n for a certificate of exceptionality.
///
/// Preference order: the smallest n with F | x^{q^n} - x (certificate
/// (n, 1, 0)); for linear F = x - c, the certificate (0, 0, -c); otherwise
/// the smallest n at which x^{q^n} mod F has degree <= 1.
inline ExceptionalVerdict classify_exceptional(const PolyOverK& F, std::uint32_t max_n) {
  detail::require(F.degree() >= 1, "classify_exceptional needs a nonconstant F");
  detail::require(is_separable_squarefree(F), "classify_exceptional needs a separable squarefree F");
  const PolyOverK Fm = F.monic();
  FrobeniusPowers it(Fm);
  std::optional<std::uint32_t> first_affine;
  std::optional<std::pair<RatFunc, RatFunc>> affine_parts;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    it.step();
    if (it.is_identity()) return ExceptionalCert::verified(Fm, n, RatFunc::one(F.field()), RatFunc(F.field()));
    if (!first_affine && it.remainder_degree() <= 1) {
      first_affine = n;
      affine_parts.emplace(it.coefficient(1), -it.coefficient(0));
    }
  }
  if (Fm.degree() == 1) return ExceptionalCert::verified(Fm, 0, RatFunc(F.field()), Fm[0]);
  if (first_affine) return ExceptionalCert::verified(Fm, *first_affine, affine_parts->first, affine_parts->second);
  return NonExceptionalUpTo{max_n};
}

inline ExceptionalVerdict classify_exceptional(const PolyOverK& F) {
  return classify_exceptional(F, default_max_n(F.degree()));
}

}  // namespace ffgpd
