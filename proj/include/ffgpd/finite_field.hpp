#pragma once

// Arithmetic in F_q, q = p^k, realised as F_p[u]/(M) for a fixed monic
// irreducible M of degree k. Elements are encoded as the integer
// sum c_i p^i of their coefficient vector (c_0 + c_1 u + ...), so the natural
// order on encodings is the enumeration order.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace ffgpd {

/// Largest field order accepted by FieldCtx. Elements are stored in 32-bit
/// words and multiplication in extension fields goes through log tables.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p used only while building a context.
using SmallPoly = std::vector<std::uint32_t>;

inline void trim(SmallPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline SmallPoly small_rem(SmallPoly a, const SmallPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t s = c * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - s) % p);
    }
    trim(a);
  }
  return a;
}

inline bool small_irreducible(const SmallPoly& m, std::uint32_t p) {
  const std::size_t k = m.size() - 1;
  if (k <= 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      SmallPoly div(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      div[d] = 1;
      if (small_rem(m, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// The constant field F_q. Immutable once built; share it through FieldPtr.
class FieldCtx {
 public:
  /// Builds F_{p^k} with the smallest (by encoding) monic irreducible
  /// modulus of degree k over F_p.
  static FieldPtr make(std::uint32_t p, std::uint32_t k = 1) {
    validate_order(p, k);
    if (k == 1) return FieldPtr(new FieldCtx(p, {0, 1}));
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      detail::SmallPoly m(k + 1, 0);
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < k; ++i) {
        m[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      m[k] = 1;
      if (m[0] != 0 && detail::small_irreducible(m, p)) return FieldPtr(new FieldCtx(p, std::move(m)));
    }
    throw InvariantError("no irreducible modulus found");
  }

  /// Builds F_{p^k} from an explicit monic irreducible modulus
  /// (coefficients low-to-high, length k+1).
  static FieldPtr make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    detail::trim(modulus);
    detail::require(modulus.size() >= 2, "field modulus must have degree >= 1");
    const auto k = static_cast<std::uint32_t>(modulus.size() - 1);
    validate_order(p, k);
    for (auto& c : modulus) c %= p;
    detail::require(modulus.back() == 1, "field modulus must be monic");
    detail::require(detail::small_irreducible(modulus, p), "field modulus is not irreducible over F_p");
    return FieldPtr(new FieldCtx(p, std::move(modulus)));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool operator==(const FieldCtx& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  // Raw arithmetic on encodings. Inputs must lie in [0, q).

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) {
      const std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      const std::uint32_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      std::uint32_t s = da + db;
      if (s >= p_) s -= p_;
      r += s * pow_p_[i];
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      const std::uint32_t d = a % p_;
      a /= p_;
      r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  std::uint32_t inv(std::uint32_t a) const {
    detail::require(a != 0, "division by zero in F_q");
    return inv_[a];
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (k_ > 1) {
      const std::uint64_t order = q_ - 1;
      return exp_[static_cast<std::size_t>((std::uint64_t(log_[a]) * (e % order)) % order)];
    }
    std::uint64_t r = 1, b = a;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }

  /// The unique b with b^p = a. F_q is perfect, so b = a^{q/p}.
  std::uint32_t pth_root(std::uint32_t a) const { return pow(a, q_ / p_); }

  /// Encoding of the image of the prime-field integer n.
  std::uint32_t from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  /// Encoding of the class of u (the root of the modulus).
  std::uint32_t generator() const {
    if (k_ == 1) return neg(modulus_[0] % p_);
    return p_;
  }

  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

 private:
  FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), k_(static_cast<std::uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    q_ = 1;
    pow_p_.resize(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      pow_p_[i] = q_;
      q_ *= p_;
    }
    inv_.assign(q_, 0);
    if (k_ == 1) {
      for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = detail::inv_mod_prime(a, p_);
      return;
    }
    build_log_tables();
    for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  static void validate_order(std::uint32_t p, std::uint32_t k) {
    detail::require(detail::is_prime(p), "field characteristic must be prime");
    detail::require(k >= 1, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      detail::require(q <= kMaxFieldOrder, "field order exceeds the supported maximum");
    }
  }

  // Multiplication straight from the definition; only used to build tables.
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const auto da = digits(a), db = digits(b);
    detail::SmallPoly prod(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_);
    const auto r = detail::small_rem(std::move(prod), modulus_, p_);
    std::uint32_t enc = 0;
    for (std::size_t i = 0; i < r.size(); ++i) enc += r[i] * pow_p_[i];
    return enc;
  }

  void build_log_tables() {
    const std::uint32_t order = q_ - 1;
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::vector<std::uint32_t> table(order);
      std::uint32_t x = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < order; ++i) {
        table[i] = x;
        x = slow_mul(x, g);
        if (x == 1 && i + 1 < order) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
      exp_ = std::move(table);
      log_.assign(q_, 0);
      for (std::uint32_t i = 0; i < order; ++i) log_[exp_[i]] = i;
      return;
    }
    throw InvariantError("F_q has no primitive element");
  }

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> inv_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw PreconditionError("operands belong to different fields");
}

/// An element of F_q bound to its field.
class FqElem {
 public:
  FqElem(FieldPtr field, std::uint32_t value) : field_(std::move(field)), value_(value) {
    detail::require(field_ != nullptr, "FqElem needs a field");
    detail::require(value_ < field_->q(), "FqElem encoding out of range");
  }

  static FqElem zero(const FieldPtr& f) { return {f, 0}; }
  static FqElem one(const FieldPtr& f) { return {f, 1}; }
  static FqElem from_int(const FieldPtr& f, std::int64_t n) { return {f, f->from_int(n)}; }
  static FqElem generator(const FieldPtr& f) { return {f, f->generator()}; }

  const FieldPtr& field() const { return field_; }
  std::uint32_t value() const { return value_; }
  std::vector<std::uint32_t> coeffs() const { return field_->digits(value_); }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  FqElem operator-() const { return {field_, field_->neg(value_)}; }

  FqElem& operator+=(const FqElem& o) {
    require_same_field(field_, o.field_);
    value_ = field_->add(value_, o.value_);
    return *this;
  }
  FqElem& operator-=(const FqElem& o) {
    require_same_field(field_, o.field_);
    value_ = field_->sub(value_, o.value_);
    return *this;
  }
  FqElem& operator*=(const FqElem& o) {
    require_same_field(field_, o.field_);
    value_ = field_->mul(value_, o.value_);
    return *this;
  }
  FqElem& operator/=(const FqElem& o) {
    require_same_field(field_, o.field_);
    value_ = field_->div(value_, o.value_);
    return *this;
  }

  friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
  friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
  friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
  friend FqElem operator/(FqElem a, const FqElem& b) { return a /= b; }

  friend bool operator==(const FqElem& a, const FqElem& b) {
    return a.value_ == b.value_ && same_field(a.field_, b.field_);
  }

  FqElem inverse() const { return {field_, field_->inv(value_)}; }
  FqElem pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

 private:
  FieldPtr field_;
  std::uint32_t value_;
};

enum class FieldOp { add, sub, mul, div };

inline FqElem ff_arith(const FqElem& a, const FqElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
  }
  throw InvariantError("unknown field operation");
}

inline FqElem ff_pow(const FqElem& a, std::uint64_t e) { return a.pow(e); }

/// All q elements in encoding order (coefficient vectors, low digit fastest).
inline std::vector<FqElem> ff_enumerate(const FieldPtr& field) {
  std::vector<FqElem> out;
  out.reserve(field->q());
  for (std::uint32_t v = 0; v < field->q(); ++v) out.emplace_back(field, v);
  return out;
}

}  // namespace ffgpd
