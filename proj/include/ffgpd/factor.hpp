#pragma once

// Factorization of polynomials over F_q: squarefree split, distinct-degree
// split, then randomized equal-degree split (Cantor-Zassenhaus for odd q,
// trace splitting for q = 2^k).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "poly_fq.hpp"

namespace ffgpd {

struct Factorization {
  FqElem unit;
  /// Monic irreducible factors with multiplicities, in canonical order.
  std::vector<std::pair<PolyFq, std::uint32_t>> factors;

  PolyFq expand() const {
    PolyFq r = PolyFq::constant(unit);
    for (const auto& [f, e] : factors) r *= pow(f, e);
    return r;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

/// Multiplicity-tagged squarefree parts of a monic polynomial.
inline std::vector<std::pair<PolyFq, std::uint32_t>> squarefree_parts(const PolyFq& f, std::uint32_t scale = 1) {
  std::vector<std::pair<PolyFq, std::uint32_t>> out;
  if (f.degree() < 1) return out;
  const std::uint32_t p = f.ctx().p();
  PolyFq c = gcd(f, derivative(f));
  PolyFq w = exact_div(f, c);
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    PolyFq y = gcd(w, c);
    PolyFq z = exact_div(w, y);
    if (z.degree() > 0) out.emplace_back(std::move(z), i * scale);
    ++i;
    w = std::move(y);
    c = exact_div(c, w);
  }
  if (c.degree() > 0) {
    auto rest = squarefree_parts(pth_root(c), scale * p);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

/// Splits a squarefree monic f into products of irreducibles of equal degree.
inline std::vector<std::pair<PolyFq, std::uint32_t>> distinct_degree_parts(PolyFq f) {
  std::vector<std::pair<PolyFq, std::uint32_t>> out;
  const PolyFq t = PolyFq::t(f.field());
  const std::uint64_t q = f.ctx().q();
  PolyFq h = t % f;
  std::uint32_t d = 0;
  while (f.degree() >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = pow_mod(h, q, f);
    PolyFq g = gcd(f, h - t);
    if (g.degree() > 0) {
      f = exact_div(f, g);
      h = h % f;
      out.emplace_back(std::move(g), d);
    }
  }
  if (f.degree() > 0) {
    const auto deg = static_cast<std::uint32_t>(f.degree());
    out.emplace_back(std::move(f), deg);
  }
  return out;
}

template <class Rng>
void equal_degree_split(const PolyFq& g, std::uint32_t d, Rng& rng, std::vector<PolyFq>& out) {
  if (g.degree() == static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const FieldCtx& F = g.ctx();
  const std::uint64_t q = F.q();
  for (;;) {
    PolyFq a = random_poly(g.field(), static_cast<std::size_t>(g.degree() - 1), rng);
    if (a.degree() < 1) continue;
    PolyFq b(g.field());
    if (F.p() != 2) {
      // a^{(q^d - 1)/2} = (prod_{j<d} a^{q^j})^{(q-1)/2}
      PolyFq norm = a, acc = a;
      for (std::uint32_t j = 1; j < d; ++j) {
        acc = pow_mod(acc, q, g);
        norm = mul_mod(norm, acc, g);
      }
      b = pow_mod(norm, (q - 1) / 2, g) - PolyFq::one(g.field());
    } else {
      // Absolute trace to F_2: sum_{i < k d} a^{2^i}.
      PolyFq acc = a;
      b = a;
      for (std::uint32_t i = 1; i < F.k() * d; ++i) {
        acc = mul_mod(acc, acc, g);
        b += acc;
      }
    }
    if (b.is_zero()) continue;
    PolyFq u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree_split(u, d, rng, out);
      equal_degree_split(exact_div(g, u), d, rng, out);
      return;
    }
  }
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw PreconditionError("integer overflow in q^d");
    r *= base;
  }
  return r;
}

inline std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline int moebius(std::uint32_t n) {
  int mu = 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace detail

/// Complete factorization. The result is canonical, so it does not depend on
/// the seed driving the equal-degree split.
inline Factorization factor(const PolyFq& a, std::uint64_t seed = 0) {
  detail::require(!a.is_zero(), "cannot factor the zero polynomial");
  Factorization out{a.leading(), {}};
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : detail::squarefree_parts(a.monic())) {
    for (const auto& [group, d] : detail::distinct_degree_parts(part)) {
      std::vector<PolyFq> irr;
      detail::equal_degree_split(group, d, rng, irr);
      for (auto& f : irr) out.factors.emplace_back(std::move(f), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// Largest degree of an irreducible factor of a nonconstant polynomial.
/// Uses only the deterministic squarefree and distinct-degree stages.
inline std::uint32_t max_factor_degree(const PolyFq& a) {
  detail::require(a.degree() >= 1, "max_factor_degree needs a nonconstant polynomial");
  std::uint32_t best = 0;
  for (const auto& [part, mult] : detail::squarefree_parts(a.monic()))
    for (const auto& [group, d] : detail::distinct_degree_parts(part)) best = std::max(best, d);
  return best;
}

/// Rabin's test: f of degree n is irreducible iff t^{q^n} = t mod f and
/// gcd(f, t^{q^{n/r}} - t) = 1 for every prime r | n.
inline bool irreducible_test(const PolyFq& a) {
  detail::require(a.degree() >= 1, "irreducible_test needs a nonconstant polynomial");
  const PolyFq f = a.monic();
  const auto n = static_cast<std::uint32_t>(f.degree());
  if (n == 1) return true;
  const PolyFq t = PolyFq::t(f.field());
  const std::uint64_t q = f.ctx().q();
  std::vector<PolyFq> frob;  // frob[i] = t^{q^i} mod f
  frob.reserve(n + 1);
  frob.push_back(t % f);
  for (std::uint32_t i = 1; i <= n; ++i) frob.push_back(pow_mod(frob.back(), q, f));
  if (!(frob[n] == t % f)) return false;
  for (std::uint32_t r : detail::prime_divisors(n)) {
    const PolyFq diff = frob[n / r] - t;
    if (diff.is_zero() || gcd(f, diff).degree() > 0) return false;
  }
  return true;
}

/// Number of monic irreducibles of degree d over F_q, (1/d) sum_{e|d} mu(e) q^{d/e}.
inline std::uint64_t count_irreducibles(std::uint64_t q, std::uint32_t d) {
  detail::require(d >= 1, "count_irreducibles needs d >= 1");
  __int128 total = 0;
  for (std::uint32_t e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = detail::moebius(e);
    if (mu == 0) continue;
    total += static_cast<__int128>(mu) * detail::checked_pow(q, d / e);
  }
  return static_cast<std::uint64_t>(total / d);
}

/// All monic irreducibles of degree d, in canonical order.
inline std::vector<PolyFq> enumerate_irreducibles(const FieldPtr& field, std::uint32_t d) {
  detail::require(d >= 1, "enumerate_irreducibles needs d >= 1");
  const std::uint64_t count = detail::checked_pow(field->q(), d);
  std::vector<PolyFq> out;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // idx runs through the lower coefficients with the top one varying slowest,
    // which is the canonical order for fixed degree.
    PolyFq f = PolyFq::monic_from_index(field, d, idx);
    if (d > 1 && f[0] == 0) continue;
    if (irreducible_test(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace ffgpd
