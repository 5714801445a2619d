#pragma once

// Command-line front end. run_cli() holds all of it so the binary's main()
// is a one-liner and tests can drive commands in-process.
//
// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 internal invariant breach.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "report.hpp"

namespace ffgpd {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitPrecondition = 3, kExitInternal = 4 };

/// Everything that determines a run's output.
struct RunConfig {
  std::string command;
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::uint64_t seed = 0;
  std::string format = "json";
  unsigned jobs = 1;

  std::optional<std::string> F, f, f0, u, sigma, tau, eps, mode;
  std::vector<std::string> factors, b;
  std::optional<std::uint32_t> H_max, max_n, k_max, n, d;
  std::optional<std::uint64_t> samples;

  std::uint64_t q() const { return detail::checked_pow(p, k); }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const Json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

inline std::uint64_t parse_uint(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw ParseError(std::string("invalid ") + what + ": \"" + s + "\"");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline Json to_json(const RunConfig& c) {
  Json j{{"command", c.command}, {"q", c.q()}, {"p", c.p}, {"k", c.k}};
  detail::put(j, "modulus", c.modulus);
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["jobs"] = c.jobs;
  detail::put(j, "F", c.F);
  if (!c.factors.empty()) j["factors"] = c.factors;
  detail::put(j, "f", c.f);
  detail::put(j, "f0", c.f0);
  detail::put(j, "u", c.u);
  if (!c.b.empty()) j["b"] = c.b;
  detail::put(j, "H_max", c.H_max);
  detail::put(j, "max_n", c.max_n);
  detail::put(j, "k_max", c.k_max);
  detail::put(j, "d", c.d);
  detail::put(j, "n", c.n);
  detail::put(j, "sigma", c.sigma);
  detail::put(j, "tau", c.tau);
  detail::put(j, "eps", c.eps);
  detail::put(j, "mode", c.mode);
  detail::put(j, "samples", c.samples);
  return j;
}

inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.p = j.at("p").get<std::uint32_t>();
  c.k = j.at("k").get<std::uint32_t>();
  detail::get(j, "modulus", c.modulus);
  c.seed = j.at("seed").get<std::uint64_t>();
  c.format = j.at("format").get<std::string>();
  c.jobs = j.at("jobs").get<unsigned>();
  detail::get(j, "F", c.F);
  if (j.contains("factors")) c.factors = j.at("factors").get<std::vector<std::string>>();
  detail::get(j, "f", c.f);
  detail::get(j, "f0", c.f0);
  detail::get(j, "u", c.u);
  if (j.contains("b")) c.b = j.at("b").get<std::vector<std::string>>();
  detail::get(j, "H_max", c.H_max);
  detail::get(j, "max_n", c.max_n);
  detail::get(j, "k_max", c.k_max);
  detail::get(j, "d", c.d);
  detail::get(j, "n", c.n);
  detail::get(j, "sigma", c.sigma);
  detail::get(j, "tau", c.tau);
  detail::get(j, "eps", c.eps);
  detail::get(j, "mode", c.mode);
  detail::get(j, "samples", c.samples);
  return c;
}

/// "4" or "2^2" -> (2, 2). Rejects anything that is not a prime power.
inline std::pair<std::uint32_t, std::uint32_t> parse_q(const std::string& text) {
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    const std::uint64_t p = detail::parse_uint(text.substr(0, caret), "q");
    const std::uint64_t k = detail::parse_uint(text.substr(caret + 1), "q");
    if (!detail::is_prime(p) || k == 0) throw ParseError("q must be a prime power, got \"" + text + "\"");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxFieldOrder) throw ParseError("q exceeds " + std::to_string(kMaxFieldOrder));
    }
    return {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k)};
  }
  const std::uint64_t q = detail::parse_uint(text, "q");
  if (q < 2) throw ParseError("q must be a prime power, got \"" + text + "\"");
  if (q > kMaxFieldOrder) throw ParseError("q exceeds " + std::to_string(kMaxFieldOrder));
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint64_t r = q;
  std::uint32_t k = 0;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw ParseError("q must be a prime power, got \"" + text + "\"");
  return {static_cast<std::uint32_t>(p), k};
}

/// "1/2", "3", "0.25" -> positive rational.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  Rational r{};
  if (slash != std::string::npos) {
    r = {detail::parse_uint(text.substr(0, slash), "eps"), detail::parse_uint(text.substr(slash + 1), "eps")};
  } else if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw ParseError("invalid eps: \"" + text + "\"");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = text.substr(0, dot);
    r = {(whole.empty() ? 0 : detail::parse_uint(whole, "eps")) * den + detail::parse_uint(frac, "eps"), den};
  } else {
    r = {detail::parse_uint(text, "eps"), 1};
  }
  if (r.num == 0 || r.den == 0) throw ParseError("eps must be a positive rational, got \"" + text + "\"");
  const std::uint64_t g = std::gcd(r.num, r.den);
  return {r.num / g, r.den / g};
}

inline FieldPtr make_field(const RunConfig& c) {
  return c.modulus ? FieldCtx::make(c.p, *c.modulus) : FieldCtx::make(c.p, c.k);
}

namespace detail {

inline const std::string& need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw ParseError(std::string("missing ") + flag);
  return *v;
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ParseError(std::string("missing ") + flag);
  return *v;
}

inline PolyFq parse_poly_fq(const FieldPtr& field, const std::string& text) {
  const RatFunc f = parse_ratfunc(field, text);
  if (!f.is_polynomial()) throw ParseError("expected a polynomial in t, got \"" + text + "\"");
  return f.num();
}

inline ScanMode scan_mode(const RunConfig& c) {
  const std::string m = c.mode.value_or("exhaustive");
  if (m == "exhaustive") return ScanMode::exhaustive_mode();
  if (m == "sample") return ScanMode::sampled(c.samples.value_or(100));
  throw ParseError("mode must be exhaustive or sample, got \"" + m + "\"");
}

/// The certificate from --n/--sigma/--tau, or the classifier's when none is given.
inline ExceptionalCert certificate(const RunConfig& c, const FieldPtr& field, const PolyOverK& F) {
  if (c.n || c.sigma || c.tau) {
    if (!(c.n && c.sigma && c.tau)) throw ParseError("--n, --sigma and --tau go together");
    return ExceptionalCert::verified(F, *c.n, parse_ratfunc(field, *c.sigma), parse_ratfunc(field, *c.tau));
  }
  const ExceptionalVerdict v = c.max_n ? classify_exceptional(F, *c.max_n) : classify_exceptional(F);
  if (const auto* cert = std::get_if<ExceptionalCert>(&v)) return *cert;
  throw PreconditionError("no exceptional certificate found up to n = " + std::to_string(std::get<NonExceptionalUpTo>(v).max_n));
}

struct Outcome {
  Json result;
  std::string summary;  // first line of text output
};

inline Outcome execute(const RunConfig& c) {
  const FieldPtr field = make_field(c);
  const std::string& cmd = c.command;
  if (cmd == "classify") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    if (F.degree() < 1) throw PreconditionError("F must be nonconstant");
    if (!is_separable_squarefree(F)) {
      const Json sep = to_json(separability_classify(F));
      throw PreconditionError("F is not separable squarefree (" + sep["verdict"].get<std::string>() + ")");
    }
    const std::uint32_t max_n = c.max_n.value_or(default_max_n(F.degree()));
    const ExceptionalVerdict v = classify_exceptional(F, max_n);
    Json r{{"F", to_string(F)}, {"max_n", max_n}};
    r.update(to_json(v));
    std::string s;
    if (const auto* cert = std::get_if<ExceptionalCert>(&v)) {
      s = "Exceptional n=" + std::to_string(cert->n()) + " sigma=" + to_string(cert->sigma()) + " tau=" + to_string(cert->tau());
    } else {
      s = "NonExceptionalUpTo " + std::to_string(max_n);
    }
    return {r, s};
  }
  if (cmd == "separability") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    Json r{{"F", to_string(F)}};
    r.update(to_json(separability_classify(F)));
    return {r, r["verdict"].get<std::string>()};
  }
  if (cmd == "delta") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    const RatFunc f = parse_ratfunc(field, need(c.f, "--f"));
    const RatFunc v = evaluate(F, f);
    if (v.is_constant()) throw PreconditionError("F(f) is constant, delta is undefined (skip)");
    const std::uint32_t d = delta(v);
    return {Json{{"F", to_string(F)}, {"f", to_string(f)}, {"value", to_string(v)}, {"delta", d}}, std::to_string(d)};
  }
  if (cmd == "scan") {
    const ScanMode mode = scan_mode(c);
    const std::uint32_t H = need(c.H_max, "--H-max");
    if (!c.factors.empty()) {
      std::vector<PolyOverK> fs;
      for (const auto& t : c.factors) fs.push_back(parse_poly_over_k(field, t));
      return {to_json(main_bound_scan(fs, H, mode, c.seed, c.jobs)), ""};
    }
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    return {to_json(main_bound_scan(F, H, mode, c.seed, c.jobs)), ""};
  }
  if (cmd == "exscan") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    const ExceptionalCert cert = certificate(c, field, F);
    const Rational eps = parse_rational(c.eps.value_or("1/2"));
    return {to_json(exceptional_bound_scan(F, cert, eps, need(c.H_max, "--H-max"), scan_mode(c), c.seed, c.jobs)), ""};
  }
  if (cmd == "sequence") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    const ExceptionalCert cert = certificate(c, field, F);
    const RatFunc f0 = parse_ratfunc(field, need(c.f0, "--f0"));
    return {to_json(exceptional_sequence(F, cert, f0, c.k_max.value_or(4), c.seed)), ""};
  }
  if (cmd == "pathology") {
    const PolyOverK F = parse_poly_over_k(field, need(c.F, "--F"));
    return {to_json(pathology_run(F, c.k_max.value_or(4))), ""};
  }
  if (cmd == "abc") {
    const RatFunc u = parse_ratfunc(field, need(c.u, "--u"));
    std::vector<FqElem> bs;
    for (const auto& t : c.b) bs.push_back(parse_fq(field, t));
    const AbcReport r = abc_verify(u, bs, c.seed);
    return {to_json(r), "LHS " + std::to_string(r.lhs) + " RHS " + std::to_string(r.rhs) + " slack " + std::to_string(r.slack())};
  }
  if (cmd == "places") {
    const std::uint32_t d = need(c.d, "--d");
    const std::uint64_t total = places_degree_sum(field->q(), d);
    Json counts = Json::array();
    for (std::uint32_t e = 1; e <= d; ++e)
      counts.push_back(Json{{"degree", e}, {"finite_places", count_irreducibles(field->q(), e)}});
    return {Json{{"d", d}, {"degree_sum", total}, {"counts", std::move(counts)}}, std::to_string(total)};
  }
  if (cmd == "factor") {
    const PolyFq f = parse_poly_fq(field, need(c.f, "--f"));
    Json r{{"f", to_string(f)}};
    r.update(to_json(factor(f, c.seed)));
    return {r, ""};
  }
  if (cmd == "divisor") {
    const RatFunc f = parse_ratfunc(field, need(c.f, "--f"));
    const Divisor D = divisor_of(f, c.seed);
    Json r{{"f", to_string(f)}, {"height", height(f)}, {"degree", D.degree()}, {"divisor", to_json(D)}};
    if (!f.is_constant()) r["delta"] = delta(f);
    return {r, ""};
  }
  throw ParseError("unknown command \"" + cmd + "\"");
}

inline std::string format_output(const RunConfig& c, const FieldPtr& field, const Outcome& o) {
  if (c.format == "json") {
    Json out{{"schema", kSchema}, {"version", kVersion}, {"command", c.command}, {"q", field->q()},
             {"modulus", field->modulus()}, {"seed", c.seed}, {"config", to_json(c)}, {"result", o.result}};
    return out.dump(2) + "\n";
  }
  const std::string header = std::string("# ffgpd ") + kVersion + " command=" + c.command +
                             " q=" + std::to_string(field->q()) + " seed=" + std::to_string(c.seed) + "\n";
  if (c.format == "csv") return header + render_csv(o.result);
  return header + (o.summary.empty() ? "" : o.summary + "\n") + render_text(o.result);
}

inline void error_line(std::ostream& err, const char* kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace detail

/// Builds the RunConfig for `args` (args[0] is the program name). Returns
/// nullopt when help was requested; throws CLI::ParseError or ParseError.
inline std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Greatest prime divisors of F(f) over F_q(t): exceptionality, scans and ABC checks", "ffgpd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig c;
  std::string q_text, modulus_text;
  app.add_option("--q", q_text, "field size, p^k or its value")->required();
  app.add_option("--modulus", modulus_text, "monic irreducible modulus of F_q over F_p, coefficients low to high, comma separated");
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--jobs", c.jobs, "worker threads for scans")->check(CLI::Range(1u, 1024u))->capture_default_str();

  std::string b_text;
  const auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  auto* classify = add("classify", "search for an exceptionality certificate of F");
  classify->add_option("--F", c.F, "polynomial in x over F_q(t)")->required();
  classify->add_option("--max-n", c.max_n, "largest n tried");

  auto* sep = add("separability", "separability and squarefreeness of F");
  sep->add_option("--F", c.F)->required();

  auto* delta_cmd = add("delta", "largest support degree of F(f)");
  delta_cmd->add_option("--F", c.F)->required();
  delta_cmd->add_option("--f", c.f, "element of F_q(t)")->required();

  auto* scan = add("scan", "delta(F(f)) against log_q h(f) for all heights up to H");
  auto* scan_F = scan->add_option("--F", c.F);
  scan->add_option("--factor", c.factors, "a factor of F (repeatable, instead of --F)")->excludes(scan_F);
  scan->add_option("--H-max", c.H_max)->required();
  scan->add_option("--mode", c.mode, "exhaustive or sample");
  scan->add_option("--samples", c.samples, "draws per height in sample mode");

  auto* exscan = add("exscan", "sharpened lower bound for exceptional F");
  exscan->add_option("--F", c.F)->required();
  exscan->add_option("--H-max", c.H_max)->required();
  exscan->add_option("--eps", c.eps, "positive rational, default 1/2");
  exscan->add_option("--mode", c.mode);
  exscan->add_option("--samples", c.samples);
  exscan->add_option("--max-n", c.max_n);
  exscan->add_option("--n", c.n);
  exscan->add_option("--sigma", c.sigma);
  exscan->add_option("--tau", c.tau);

  auto* seq = add("sequence", "f_{k+1} = (f_k^{q^n} + tau) / sigma");
  seq->add_option("--F", c.F)->required();
  seq->add_option("--f0", c.f0)->required();
  seq->add_option("--k-max", c.k_max);
  seq->add_option("--max-n", c.max_n);
  seq->add_option("--n", c.n);
  seq->add_option("--sigma", c.sigma);
  seq->add_option("--tau", c.tau);

  auto* path = add("pathology", "constant-coefficient F at f = t^{q^k}");
  path->add_option("--F", c.F)->required();
  path->add_option("--k-max", c.k_max);

  auto* abc = add("abc", "function-field ABC inequality for u and constants b");
  abc->add_option("--u", c.u)->required();
  abc->add_option("--b", b_text, "distinct constants, comma separated")->required();

  auto* places = add("places", "total degree of places of degree <= d");
  places->add_option("--d", c.d)->required();

  auto* fac = add("factor", "factor a polynomial in t");
  fac->add_option("--f", c.f)->required();

  auto* div = add("divisor", "principal divisor of f");
  div->add_option("--f", c.f)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return std::nullopt;
  }
  c.command = app.get_subcommands().front()->get_name();
  std::tie(c.p, c.k) = parse_q(q_text);
  if (!modulus_text.empty()) {
    std::vector<std::uint32_t> m;
    for (const auto& s : detail::split(modulus_text, ',')) m.push_back(static_cast<std::uint32_t>(detail::parse_uint(s, "modulus")));
    if (m.size() != c.k + 1) throw ParseError("modulus degree does not match q");
    c.modulus = m;
  }
  if (!b_text.empty()) c.b = detail::split(b_text, ',');
  if (c.command == "scan" && !c.F && c.factors.empty()) throw ParseError("scan needs --F or --factor");
  return c;
}

/// Runs one command; returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(args, out);
    if (!cfg) return kExitOk;
    const FieldPtr field = make_field(*cfg);
    const detail::Outcome o = detail::execute(*cfg);
    out << detail::format_output(*cfg, field, o);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    detail::error_line(err, "parse", e.what());
    return kExitParse;
  } catch (const ParseError& e) {
    detail::error_line(err, "parse", e.what());
    return kExitParse;
  } catch (const PreconditionError& e) {
    detail::error_line(err, "precondition", e.what());
    return kExitPrecondition;
  } catch (const std::exception& e) {
    detail::error_line(err, "internal", e.what());
    return kExitInternal;
  }
}

}  // namespace ffgpd
