#pragma once

// Desk-scale experiments on delta(F(f)) against the height of f: the
// lower-bound scans, the exceptional sequence, the sharpened bound for
// exceptional F and the function-field ABC inequality.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "exceptional.hpp"
#include "text.hpp"

namespace ffgpd {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t lo = j * chunk, hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

/// log_q(x), exact when x is a power of q.
inline double log_q(std::uint64_t q, std::uint64_t x) {
  detail::require(x >= 1, "log_q needs a positive argument");
  std::uint64_t v = 1;
  for (int e = 0; v <= x; ++e) {
    if (v == x) return e;
    if (v > UINT64_MAX / q) break;
    v *= q;
  }
  return std::log(static_cast<double>(x)) / std::log(static_cast<double>(q));
}

/// delta(F(f)); F(f) must be nonconstant.
inline std::uint32_t delta_of_value(const PolyOverK& F, const RatFunc& f) {
  const RatFunc v = evaluate(F, f);
  if (v.is_constant()) throw PreconditionError("F(f) is constant");
  return delta(v);
}

inline std::optional<std::uint32_t> try_delta_of_value(const PolyOverK& F, const RatFunc& f) {
  const RatFunc v = evaluate(F, f);
  if (v.is_constant()) return std::nullopt;
  return delta(v);
}

struct ScanMode {
  bool exhaustive = true;
  std::size_t samples = 0;  // per height, sampling mode only

  static ScanMode exhaustive_mode() { return {}; }
  static ScanMode sampled(std::size_t n) { return {false, n}; }
  std::string name() const { return exhaustive ? "exhaustive" : "sample"; }
};

/// Candidates of height H for the given mode. Sampling seeds are derived from (seed, H).
inline std::vector<RatFunc> scan_candidates(const FieldPtr& field, std::uint32_t H, const ScanMode& mode,
                                            std::uint64_t seed) {
  if (mode.exhaustive) return enumerate_f(field, H);
  return sample_f(field, H, mode.samples, seed * 0x9E3779B97F4A7C15ull + H);
}

// ---------------------------------------------------------------------------
// delta(F(f)) > log_q h(f) - lambda.

struct ScanRow {
  std::uint32_t H = 0;
  std::size_t count = 0;    // f scanned, skips excluded
  std::size_t skipped = 0;  // F(f) constant
  std::vector<RatFunc> skipped_f;
  std::uint32_t min_delta = 0;
  std::uint32_t max_delta = 0;
  double mean_delta = 0;
  double min_gap = 0;  // min delta - log_q H
  std::optional<RatFunc> argmin;
};

/// lambda = log_q H - d, kept exactly.
struct Lambda {
  std::uint32_t H;
  std::uint32_t d;
  double value;
};

/// (log_q a.H - a.d) <=> (log_q b.H - b.d), exactly.
inline std::strong_ordering compare_lambda(std::uint64_t q, const Lambda& a, const Lambda& b) {
  // a.H q^{b.d} <=> b.H q^{a.d}
  const BigInt l = BigInt(a.H) * detail::big_pow(q, b.d);
  const BigInt r = BigInt(b.H) * detail::big_pow(q, a.d);
  return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
}

struct ScanReport {
  std::string F;
  std::uint64_t q = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::uint32_t H_max = 0;
  std::vector<ScanRow> rows;
  std::optional<Lambda> lambda;  // empty when no row has a scanned f
};

/// The scan for H = 1..H_max. F may be inseparable or given as a product of factors.
inline ScanReport main_bound_scan(const PolyOverK& F, std::uint32_t H_max, const ScanMode& mode, std::uint64_t seed,
                                  unsigned jobs = 1) {
  detail::require(F.degree() >= 1, "main_bound_scan needs a nonconstant F");
  const FieldPtr& field = F.field();
  const std::uint64_t q = field->q();
  ScanReport rep{to_string(F), q, mode.name(), seed, H_max, {}, std::nullopt};
  for (std::uint32_t H = 1; H <= H_max; ++H) {
    const auto fs = scan_candidates(field, H, mode, seed);
    std::vector<std::optional<std::uint32_t>> deltas(fs.size());
    detail::parallel_for(fs.size(), jobs, [&](std::size_t i) { deltas[i] = try_delta_of_value(F, fs[i]); });
    ScanRow row;
    row.H = H;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!deltas[i]) {
        ++row.skipped;
        row.skipped_f.push_back(fs[i]);
        continue;
      }
      const std::uint32_t d = *deltas[i];
      if (row.count == 0 || d < row.min_delta) {
        row.min_delta = d;
        row.argmin = fs[i];
      }
      row.max_delta = row.count == 0 ? d : std::max(row.max_delta, d);
      sum += d;
      ++row.count;
    }
    if (row.count > 0) {
      row.mean_delta = static_cast<double>(sum) / static_cast<double>(row.count);
      row.min_gap = row.min_delta - log_q(q, H);
      const Lambda cand{H, row.min_delta, log_q(q, H) - row.min_delta};
      if (!rep.lambda || compare_lambda(q, cand, *rep.lambda) == std::strong_ordering::greater) rep.lambda = cand;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline ScanReport main_bound_scan(const std::vector<PolyOverK>& factors, std::uint32_t H_max, const ScanMode& mode,
                                  std::uint64_t seed, unsigned jobs = 1) {
  detail::require(!factors.empty(), "main_bound_scan needs at least one factor");
  PolyOverK F = factors.front();
  std::string text = "(" + to_string(F) + ")";
  for (std::size_t i = 1; i < factors.size(); ++i) {
    F *= factors[i];
    text += "*(" + to_string(factors[i]) + ")";
  }
  ScanReport rep = main_bound_scan(F, H_max, mode, seed, jobs);
  rep.F = text;
  return rep;
}

// ---------------------------------------------------------------------------
// Constant-coefficient F and f = t^{q^k}: F(f) = F(t)^{q^k}.

struct PathologyRow {
  std::uint32_t k;
  std::uint64_t height;
  std::uint32_t delta;
  bool identity;  // F(f_k) == F(t)^{q^k}
};

struct PathologyReport {
  std::string F;
  std::uint64_t q;
  std::vector<PathologyRow> rows;
};

inline PathologyReport pathology_run(const PolyOverK& F, std::uint32_t k_max) {
  detail::require(F.degree() >= 1 && F.has_constant_coefficients(), "pathology run needs nonconstant F over F_q");
  const FieldPtr& field = F.field();
  const std::uint64_t q = field->q();
  const RatFunc base = evaluate(F, RatFunc::t(field));
  detail::require(!base.is_constant(), "F(t) is constant");
  PathologyReport rep{to_string(F), q, {}};
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    const std::uint64_t Q = detail::checked_pow(q, k);
    const RatFunc f = frobenius(RatFunc::t(field), Q);
    const RatFunc v = evaluate(F, f);
    rep.rows.push_back({k, height(f), delta(v), v == frobenius(base, Q)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Sum of deg P over the union of sup(u - b_i) >= (m - 1) h(u) + 2.

struct AbcReport {
  RatFunc u;
  std::vector<FqElem> constants;
  std::int64_t lhs;
  std::int64_t rhs;
  std::int64_t slack() const { return lhs - rhs; }
};

inline AbcReport abc_verify(const RatFunc& u, const std::vector<FqElem>& constants, std::uint64_t seed = 0) {
  if (u.is_constant()) throw PreconditionError("ABC: u must be nonconstant");
  if (is_pth_power(u)) throw PreconditionError("ABC hypothesis violated: u is a p-th power");
  detail::require(!constants.empty(), "ABC: at least one constant is needed");
  std::set<std::uint32_t> seen;
  for (const auto& b : constants) {
    require_same_field(u.field(), b.field());
    detail::require(seen.insert(b.value()).second, "ABC: constants must be distinct");
  }
  std::set<Place> support;
  for (const auto& b : constants)
    for (const auto& P : divisor_of(u - RatFunc::constant(b), seed).support()) support.insert(P);
  std::int64_t lhs = 0;
  for (const auto& P : support) lhs += P.degree();
  const auto m = static_cast<std::int64_t>(constants.size());
  return {u, constants, lhs, (m - 1) * static_cast<std::int64_t>(height(u)) + 2};
}

// ---------------------------------------------------------------------------
// f_{k+1} = (f_k^{q^n} + tau) / sigma for an exceptional certificate.

struct SequenceRow {
  std::uint32_t k;
  RatFunc f;
  std::uint32_t height;
  std::optional<std::uint32_t> delta;  // empty when F(f_k) is constant
  bool identity;                       // G(f_{k+1}) == (G(f_k)/sigma)^{q^n}
};

struct SequenceReport {
  std::string F;
  ExceptionalCert cert;
  std::vector<SequenceRow> rows;
  bool heights_increasing;
  bool identities_hold;
  std::uint32_t max_delta;
};

inline SequenceReport exceptional_sequence(const PolyOverK& F, const ExceptionalCert& cert, const RatFunc& f0,
                                           std::uint32_t k_max, std::uint64_t seed = 0) {
  if (cert.sigma().is_zero()) throw PreconditionError("sequence needs sigma != 0");
  if (cert.n() == 0) throw PreconditionError("sequence needs n >= 1");
  detail::require(certificate_holds(F, cert.n(), cert.sigma(), cert.tau()), "certificate does not hold for F");
  const std::uint32_t bound = std::max(delta_or_zero(cert.sigma()), cert.tau().is_zero() ? 0u : delta_or_zero(cert.tau()));
  bool seeded = false;
  if (!f0.is_zero()) {
    const Divisor D = divisor_of(f0, seed);
    for (const auto& [P, mult] : D.terms())
      if (mult < 0 && P.degree() > bound) seeded = true;
  }
  if (!seeded) throw PreconditionError("f0 needs a pole of degree greater than delta(sigma) and delta(tau)");

  const std::uint64_t Q = detail::checked_pow(F.field()->q(), cert.n());
  const RatFunc& sigma = cert.sigma();
  const RatFunc& tau = cert.tau();
  const auto G = [&](const RatFunc& f) { return frobenius(f, Q) - sigma * f + tau; };
  SequenceReport rep{to_string(F), cert, {}, true, true, 0};
  RatFunc f = f0;
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    const RatFunc next = (frobenius(f, Q) + tau) / sigma;
    const bool id = G(next) == frobenius(G(f) / sigma, Q);
    SequenceRow row{k, f, height(f), try_delta_of_value(F, f), id};
    if (!rep.rows.empty() && row.height <= rep.rows.back().height) rep.heights_increasing = false;
    rep.identities_hold = rep.identities_hold && id;
    if (row.delta) rep.max_delta = std::max(rep.max_delta, *row.delta);
    rep.rows.push_back(std::move(row));
    f = next;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// delta(F(f)) > log_q h(f) + log_q(m - 1) + log_q(1 - 1/q) - eps for exceptional F
// and f with sigma f - tau not a p-th power.

/// eps = num / den > 0.
struct Rational {
  std::uint64_t num;
  std::uint64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct BoundViolation {
  RatFunc f;
  std::uint32_t delta;
};

struct ExScanRow {
  std::uint32_t H = 0;
  std::size_t count = 0;     // passed the filter, skips excluded
  std::size_t filtered = 0;  // sigma f - tau is a p-th power
  std::size_t skipped = 0;   // F(f) constant
  std::vector<RatFunc> skipped_f;
  bool empty = true;
  std::uint32_t min_delta = 0;
  double bound = 0;       // log_q H + log_q(m-1) + log_q(1-1/q)
  double min_margin = 0;  // min delta - bound
  std::vector<BoundViolation> violations;
};

struct ExScanReport {
  std::string F;
  std::uint64_t q = 0;
  ExceptionalCert cert;
  Rational eps;
  std::string mode;
  std::uint64_t seed = 0;
  std::uint32_t H_max = 0;
  std::vector<ExScanRow> rows;
  std::size_t total_violations = 0;
  /// Smallest H0 with no violation in any row H >= H0; H_max + 1 when the last row has one.
  std::uint32_t clean_from = 1;
};

/// The strict inequality, decided exactly: q^{(delta+1) b + a} > (H (m-1) (q-1))^b for eps = a/b.
inline bool sharpened_bound_holds(std::uint64_t q, std::uint32_t m, std::uint32_t H, std::uint32_t d, Rational eps) {
  const BigInt lhs = detail::big_pow(q, (static_cast<std::uint64_t>(d) + 1) * eps.den + eps.num);
  BigInt base = BigInt(H) * (m - 1) * (q - 1);
  BigInt rhs = 1;
  for (std::uint64_t i = 0; i < eps.den; ++i) rhs *= base;
  return lhs > rhs;
}

inline ExScanReport exceptional_bound_scan(const PolyOverK& F, const ExceptionalCert& cert, Rational eps,
                                           std::uint32_t H_max, const ScanMode& mode, std::uint64_t seed,
                                           unsigned jobs = 1) {
  detail::require(F.degree() >= 2, "exceptional_bound_scan needs deg F >= 2");
  detail::require(eps.num > 0 && eps.den > 0, "eps must be a positive rational");
  detail::require(certificate_holds(F, cert.n(), cert.sigma(), cert.tau()), "certificate does not hold for F");
  const FieldPtr& field = F.field();
  const std::uint64_t q = field->q();
  const auto m = static_cast<std::uint32_t>(F.degree());
  ExScanReport rep{to_string(F), q, cert, eps, mode.name(), seed, H_max, {}, 0, 1};
  for (std::uint32_t H = 1; H <= H_max; ++H) {
    const auto fs = scan_candidates(field, H, mode, seed);
    // 0: filtered, 1: skipped, 2: scanned
    std::vector<int> kind(fs.size());
    std::vector<std::uint32_t> deltas(fs.size(), 0);
    detail::parallel_for(fs.size(), jobs, [&](std::size_t i) {
      const RatFunc lin = cert.sigma() * fs[i] - cert.tau();
      if (lin.is_zero() || is_pth_power(lin)) return void(kind[i] = 0);
      const auto d = try_delta_of_value(F, fs[i]);
      if (!d) return void(kind[i] = 1);
      kind[i] = 2;
      deltas[i] = *d;
    });
    ExScanRow row;
    row.H = H;
    row.bound = log_q(q, H) + log_q(q, m - 1) + log_q(q, q - 1) - 1.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (kind[i] == 0) {
        ++row.filtered;
        continue;
      }
      if (kind[i] == 1) {
        ++row.skipped;
        row.skipped_f.push_back(fs[i]);
        continue;
      }
      const std::uint32_t d = deltas[i];
      if (row.count == 0 || d < row.min_delta) row.min_delta = d;
      ++row.count;
      if (!sharpened_bound_holds(q, m, H, d, eps)) row.violations.push_back({fs[i], d});
    }
    row.empty = row.count == 0;
    if (!row.empty) row.min_margin = row.min_delta - row.bound;
    rep.total_violations += row.violations.size();
    if (!row.violations.empty()) rep.clean_from = H + 1;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ffgpd
