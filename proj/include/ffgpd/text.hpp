#pragma once

// Text form of field elements, F_q[t], K = F_q(t) and K[x].
//
// Grammar (one pass, recursive descent):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/')? unary)*          juxtaposition multiplies
//   unary  := '-' unary | power
//   power  := atom ('^' '-'? integer)?
//   atom   := integer | 't' | 'u' | 'x' | '(' expr ')'
// Integers are read mod p. 'u' is the generator of F_q over F_p (k > 1 only).
// Division is allowed only by elements of K.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poly_over_k.hpp"

namespace ffgpd {

namespace detail {

class Parser {
 public:
  Parser(FieldPtr field, std::string_view text, bool allow_x)
      : field_(std::move(field)), s_(text), allow_x_(allow_x) {}

  PolyOverK parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    PolyOverK v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_atom_start() {
    skip_ws();
    if (pos_ == s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'u' || c == 'x' || c == '(';
  }

  PolyOverK konst(const RatFunc& c) const { return PolyOverK::constant(c); }

  PolyOverK expr() {
    PolyOverK acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  PolyOverK term() {
    PolyOverK acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        PolyOverK d = unary();
        if (d.degree() > 0) {
          pos_ = at;
          fail("division by a polynomial in x");
        }
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc.scaled(d[0].inverse());
      } else if (at_atom_start()) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  PolyOverK unary() {
    if (eat('-')) return -unary();
    return power();
  }

  std::uint64_t integer(std::uint64_t mod) {
    skip_ws();
    if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
    std::uint64_t v = 0;
    bool overflow = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const auto d = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (mod) {
        v = (v * 10 + d) % mod;
      } else {
        overflow = overflow || v > (UINT64_MAX - d) / 10;
        v = v * 10 + d;
      }
      ++pos_;
    }
    if (overflow) fail("exponent too large");
    return v;
  }

  PolyOverK power() {
    PolyOverK base = atom();
    if (!eat('^')) return base;
    const bool negative = eat('-');
    const std::uint64_t e = integer(0);
    if (negative || base.degree() < 1) {
      if (base.degree() > 0) fail("negative power of a polynomial in x");
      if (base.is_zero()) {
        if (negative) fail("negative power of zero");
        return e == 0 ? konst(RatFunc::one(field_)) : base;
      }
      const auto se = static_cast<std::int64_t>(e);
      if (se < 0) fail("exponent too large");
      return konst(pow(base[0], negative ? -se : se));
    }
    if (e > 1u << 20) fail("exponent too large");
    PolyOverK r = konst(RatFunc::one(field_));
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
  }

  PolyOverK atom() {
    skip_ws();
    if (pos_ == s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t v = integer(field_->p());
      return konst(RatFunc::constant(field_, static_cast<std::uint32_t>(v)));
    }
    if (c == '(') {
      ++pos_;
      PolyOverK v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 't') {
      ++pos_;
      return konst(RatFunc::t(field_));
    }
    if (c == 'u') {
      if (field_->k() == 1) fail("'u' needs a non-prime field");
      ++pos_;
      return konst(RatFunc::constant(FqElem::generator(field_)));
    }
    if (c == 'x') {
      if (!allow_x_) fail("'x' is not allowed here");
      ++pos_;
      return PolyOverK::x(field_);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  FieldPtr field_;
  std::string_view s_;
  bool allow_x_;
  std::size_t pos_ = 0;
};

inline std::string monomial_text(const std::string& var, std::size_t e) {
  if (e == 0) return "";
  return e == 1 ? var : var + "^" + std::to_string(e);
}

/// Joins "c*m" terms, omitting unit coefficients and empty monomials.
inline std::string term_text(const std::string& coeff, bool coeff_is_one, const std::string& mono) {
  if (mono.empty()) return coeff;
  if (coeff_is_one) return mono;
  return coeff + "*" + mono;
}

}  // namespace detail

/// Parses an element of K[x].
inline PolyOverK parse_poly_over_k(const FieldPtr& field, std::string_view text) {
  return detail::Parser(field, text, true).parse();
}

/// Parses an element of K.
inline RatFunc parse_ratfunc(const FieldPtr& field, std::string_view text) {
  return detail::Parser(field, text, false).parse()[0];
}

/// Parses an element of F_q.
inline FqElem parse_fq(const FieldPtr& field, std::string_view text) {
  const RatFunc c = parse_ratfunc(field, text);
  if (!c.is_constant()) throw ParseError("expected a field constant, got \"" + std::string(text) + "\"");
  return c.constant_value();
}

/// "2*u+1", "u^2", "3".
inline std::string to_string(const FieldCtx& f, std::uint32_t a) {
  if (f.k() == 1 || a < f.p()) return std::to_string(a);
  const auto d = f.digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    out += detail::term_text(std::to_string(d[i]), d[i] == 1, detail::monomial_text("u", i));
  }
  return out;
}

inline std::string to_string(const FqElem& a) { return to_string(*a.field(), a.value()); }

/// True when the text of a is a single factor (no top-level '+').
inline bool is_atomic(const FieldCtx& f, std::uint32_t a) {
  if (f.k() == 1 || a < f.p()) return true;
  std::size_t nonzero = 0;
  for (auto c : f.digits(a)) nonzero += c != 0;
  return nonzero == 1;
}

inline std::string to_string(const PolyFq& a) {
  if (a.is_zero()) return "0";
  const FieldCtx& f = a.ctx();
  std::string out;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto c = a[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = to_string(f, c);
    if (i > 0 && !is_atomic(f, c)) cs = "(" + cs + ")";
    out += detail::term_text(cs, c == 1, detail::monomial_text("t", i));
  }
  return out;
}

namespace detail {

inline std::size_t term_count(const PolyFq& a) {
  std::size_t n = 0;
  for (auto c : a.coeffs()) n += c != 0;
  return n;
}

inline bool needs_parens(const PolyFq& a) {
  if (term_count(a) > 1) return true;
  return !a.is_zero() && !is_atomic(a.ctx(), a.lead());
}

}  // namespace detail

/// "t^2+1", "(t+1)/(t^2+t+1)", "1/t".
inline std::string to_string(const RatFunc& f) {
  if (f.den().is_one()) return to_string(f.num());
  std::string n = to_string(f.num()), d = to_string(f.den());
  if (detail::needs_parens(f.num())) n = "(" + n + ")";
  if (detail::needs_parens(f.den())) d = "(" + d + ")";
  return n + "/" + d;
}

/// "x^3+(t+1)*x^2+(t)*x"; coefficients in F_q are written bare.
inline std::string to_string(const PolyOverK& F) {
  if (F.is_zero()) return "0";
  std::string out;
  for (std::size_t i = F.coeffs().size(); i-- > 0;) {
    const RatFunc& c = F.coeffs()[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string cs = to_string(c);
    if (!c.is_constant() || (i > 0 && !is_atomic(*F.field(), c.num().lead()))) cs = "(" + cs + ")";
    out += detail::term_text(cs, c.is_one(), detail::monomial_text("x", i));
  }
  return out;
}

inline std::string to_string(const Place& p) { return p.is_infinity() ? "inf" : to_string(p.prime()); }

}  // namespace ffgpd
