#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "resiring/bounds.hpp"
#include "resiring/errors.hpp"
#include "resiring/hensel.hpp"
#include "resiring/modulus.hpp"
#include "resiring/oracle.hpp"
#include "resiring/permutation.hpp"
#include "resiring/polynomial.hpp"
#include "resiring/residue.hpp"

namespace resiring::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Plain, Json, Csv };

struct CommonOptions {
  std::string format = "plain";
  std::size_t display_cap = 64;
  std::optional<unsigned> threads;
  bool progress = false;
  std::uint64_t cap = kDefaultEnumerationCap;

  Format parsed_format() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Plain;
  }

  unsigned worker_count() const {
    if (threads) return std::max(1u, *threads);
    if (const char* env = std::getenv("RESIRING_THREADS")) {
      try {
        return std::max(1, std::stoi(env));
      } catch (const std::exception&) {
        // fall through to the hardware default
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  sub->add_option("--display-cap", common.display_cap,
                  "Largest set printed in full in plain mode");
  sub->add_option("--threads", common.threads, "Worker threads (fallback: RESIRING_THREADS)");
  sub->add_flag("--progress", common.progress, "Report progress on stderr");
  sub->add_option("--cap", common.cap, "Largest modulus enumerated directly");
}

std::string join(const std::vector<Residue>& values, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string plain_set(const std::vector<Residue>& values, std::size_t cap) {
  if (values.size() <= cap) return "{" + join(values, 0, values.size()) + "}";
  const std::size_t edge = std::min<std::size_t>(8, cap / 2 + 1);
  return "{" + join(values, 0, edge) + ", ..., " +
         join(values, values.size() - edge, values.size()) + "} (" +
         std::to_string(values.size()) + " values)";
}

Json factors_json(const FactoredModulus& m) {
  Json arr = Json::array();
  for (const auto& pp : m.factors()) arr.push_back({{"p", pp.prime}, {"r", pp.exponent}});
  return arr;
}

std::string modulus_line(const FactoredModulus& m) {
  return std::to_string(m.value()) + " = " + m.to_string();
}

Json witness_json(const std::optional<PermutationWitness>& w) {
  if (!w) return nullptr;
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MissingValue>) {
          return {{"kind", "MissingValue"}, {"value", v.value}};
        } else if constexpr (std::is_same_v<T, CriticalDerivative>) {
          return {{"kind", "CriticalDerivative"}, {"prime", v.prime}, {"residue", v.residue}};
        } else {
          return {{"kind", "CollidingPair"}, {"a", v.first}, {"b", v.second}};
        }
      },
      *w);
}

std::string method_provenance(PermutationMethod method) {
  switch (method) {
    case PermutationMethod::BruteForce: return "enumeration of all residues";
    case PermutationMethod::HenselCriterion: return "p-adic permutation criterion";
    case PermutationMethod::Rivest: return "coefficient parity identities mod 2";
    case PermutationMethod::CrtComposite: return "prime-power criteria composed by CRT";
  }
  return "";
}

// ---------------------------------------------------------------- valueset

int cmd_valueset(const std::string& poly_text, const std::string& modulus_text,
                 const CommonOptions& common, std::ostream& out) {
  const IntPolynomial f = parse_poly(poly_text);
  const FactoredModulus m = FactoredModulus::parse(modulus_text);
  const bool direct = m.value() <= common.cap;
  const ValueSetReport report =
      direct ? value_set(f, m.value(), common.cap) : value_set_via_crt(f, m, common.cap, common.cap);
  const std::string route = direct ? "direct enumeration" : "product of prime-power value sets";

  switch (common.parsed_format()) {
    case Format::Json: {
      Json factors = Json::array();
      for (const auto& fv : report.factors) {
        factors.push_back({{"p", fv.factor.prime}, {"r", fv.factor.exponent},
                           {"modulus", fv.modulus}, {"n", fv.size}});
      }
      Json j{{"command", "valueset"},
             {"poly", render(f)},
             {"m", m.value()},
             {"factors", factors},
             {"n", report.size},
             {"surjective", report.is_surjective}};
      j["values"] = report.materialized ? Json(report.values) : Json(nullptr);
      j["provenance"] = {{"n", route}, {"factors", "value set modulo each prime power"}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "m,n,value\n";
      for (auto v : report.values) out << m.value() << ',' << report.size << ',' << v << '\n';
      break;
    case Format::Plain:
      out << "poly: " << render(f) << '\n'
          << "m: " << modulus_line(m) << '\n'
          << "N = " << report.size << '\n'
          << "surjective: " << (report.is_surjective ? "yes" : "no") << '\n';
      for (const auto& fv : report.factors) {
        out << "  mod " << fv.modulus << ": N = " << fv.size << '\n';
      }
      if (report.materialized) {
        out << "values: " << plain_set(report.values, common.display_cap) << '\n';
      } else {
        out << "values: not materialised (N exceeds --cap)\n";
      }
      out << "provenance: " << route << '\n';
      break;
  }
  return kOk;
}

// ---------------------------------------------------------------- isperm

int cmd_isperm(const std::string& poly_text, const std::string& modulus_text,
               const std::string& method, const CommonOptions& common, std::ostream& out) {
  const IntPolynomial f = parse_poly(poly_text);
  const FactoredModulus m = FactoredModulus::parse(modulus_text);
  PermutationVerdict verdict;
  if (method == "brute") {
    verdict = is_permutation_brute(f, m.value(), common.cap);
  } else if (method == "rivest") {
    if (!m.is_prime_power() || m.factors()[0].prime != 2 || m.factors()[0].exponent < 2) {
      throw std::invalid_argument("--method rivest needs a modulus 2^r with r >= 2");
    }
    verdict = is_permutation_rivest(f, m.factors()[0].exponent);
  } else if (m.value() == 1) {
    verdict = is_permutation_brute(f, 1);
  } else if (m.is_prime_power()) {
    verdict = is_permutation_prime_power(f, m.factors()[0].prime, m.factors()[0].exponent);
  } else {
    verdict = is_permutation(f, m);
  }

  switch (common.parsed_format()) {
    case Format::Json: {
      Json subs = Json::array();
      for (const auto& sub : verdict.sub_verdicts) {
        subs.push_back({{"m", sub.modulus},
                        {"verdict", sub.is_permutation},
                        {"method", to_string(sub.method)},
                        {"witness", witness_json(sub.witness)}});
      }
      Json j{{"command", "isperm"},
             {"poly", render(f)},
             {"m", m.value()},
             {"factors", factors_json(m)},
             {"verdict", verdict.is_permutation},
             {"method", to_string(verdict.method)},
             {"witness", witness_json(verdict.witness)},
             {"sub_verdicts", subs},
             {"provenance", {{"verdict", method_provenance(verdict.method)}}}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "m,method,verdict,witness\n";
      out << m.value() << ',' << to_string(verdict.method) << ','
          << (verdict.is_permutation ? "permutation" : "not_permutation") << ','
          << (verdict.witness ? describe(*verdict.witness) : "") << '\n';
      for (const auto& sub : verdict.sub_verdicts) {
        out << sub.modulus << ',' << to_string(sub.method) << ','
            << (sub.is_permutation ? "permutation" : "not_permutation") << ','
            << (sub.witness ? describe(*sub.witness) : "") << '\n';
      }
      break;
    case Format::Plain:
      out << "poly: " << render(f) << '\n'
          << "m: " << modulus_line(m) << '\n'
          << "method: " << to_string(verdict.method) << '\n'
          << "verdict: " << (verdict.is_permutation ? "permutation" : "not a permutation")
          << '\n';
      if (verdict.witness) out << "witness: " << describe(*verdict.witness) << '\n';
      for (const auto& sub : verdict.sub_verdicts) {
        out << "  mod " << sub.modulus << ": "
            << (sub.is_permutation ? "permutation" : "not a permutation");
        if (sub.witness) out << ", " << describe(*sub.witness);
        out << '\n';
      }
      out << "provenance: " << method_provenance(verdict.method) << '\n';
      break;
  }
  return verdict.is_permutation ? kOk : kFalseVerdict;
}

// ---------------------------------------------------------------- maxbound

int cmd_maxbound(const std::string& modulus_text, const CommonOptions& common,
                 std::ostream& out) {
  const FactoredModulus m = FactoredModulus::parse(modulus_text);
  const BoundReport report = big_m(m);

  // Independent confirmation that the achieving polynomial attains M.
  std::uint64_t verified_n = 0;
  bool verified_perm = false;
  std::string verified_by;
  if (m.value() <= common.cap) {
    verified_n = n_value(report.achieving_poly, m.value(), common.cap);
    verified_perm = is_permutation_brute(report.achieving_poly, m.value(), common.cap).is_permutation;
    verified_by = "direct enumeration";
  } else {
    verified_n = value_set_via_crt(report.achieving_poly, m, common.cap, 0).size;
    verified_perm = is_permutation(report.achieving_poly, m).is_permutation;
    verified_by = "product of prime-power value sets";
  }

  const std::string bound_tag = "max over prime factors p of m(p)";
  const std::string poly_tag = report.modulus.exponent_of(report.argmax_prime) >= 2
                                   ? "CRT assembly with X^(2p-1) + pX at the maximising prime"
                                   : "CRT assembly with an interpolated collapsing map at the "
                                     "maximising prime";
  switch (common.parsed_format()) {
    case Format::Json: {
      Json per_prime = Json::object();
      for (const auto& [p, v] : report.per_prime) per_prime[std::to_string(p)] = v;
      Json j{{"command", "maxbound"},
             {"m", m.value()},
             {"factors", factors_json(m)},
             {"M", report.big_m},
             {"per_prime", per_prime},
             {"argmax_prime", report.argmax_prime},
             {"exception", report.exception_flag},
             {"achieving_poly", render(report.achieving_poly)},
             {"n", verified_n},
             {"verdict", verified_perm},
             {"provenance",
              {{"M", bound_tag},
               {"achieving_poly", poly_tag},
               {"exception", "m = 2^r * 3 with r >= 2"},
               {"n", verified_by}}}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "m,p,r,m_of_p,M,exception,achieving_poly\n";
      for (const auto& pp : m.factors()) {
        out << m.value() << ',' << pp.prime << ',' << pp.exponent << ','
            << report.per_prime.at(pp.prime) << ',' << report.big_m << ','
            << (report.exception_flag ? "true" : "false") << ",\""
            << render(report.achieving_poly) << "\"\n";
      }
      break;
    case Format::Plain:
      out << "m: " << modulus_line(m) << '\n' << "M = " << report.big_m << '\n';
      for (const auto& [p, v] : report.per_prime) out << "  m(" << p << ") = " << v << '\n';
      out << "exception m = 2^r*3 (r >= 2): " << (report.exception_flag ? "yes" : "no") << '\n'
          << "achieving: " << render(report.achieving_poly) << '\n'
          << "verified: N = " << verified_n
          << ", permutation: " << (verified_perm ? "yes" : "no") << " (" << verified_by
          << ")\n"
          << "provenance: " << bound_tag << "; " << poly_tag << '\n';
      break;
  }
  return verified_n == report.big_m && !verified_perm ? kOk : kFalseVerdict;
}

// ---------------------------------------------------------------- verify

struct Range {
  std::uint64_t lo;
  std::uint64_t hi;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ParseError("expected lo..hi", 0);
  auto number = [](std::string_view s) { return FactoredModulus::parse(s).value(); };
  const Range r{number(std::string_view(text).substr(0, dots)),
                number(std::string_view(text).substr(dots + 2))};
  if (r.lo < 2 || r.hi < r.lo) throw std::invalid_argument("--m-range needs 2 <= lo <= hi");
  return r;
}

int cmd_verify(const std::string& range_text, const CommonOptions& common, std::ostream& out,
               std::ostream& err) {
  const Range range = parse_range(range_text);
  struct Row {
    std::uint64_t m;
    std::uint64_t theorem;
    std::optional<std::uint64_t> oracle;
    std::string strategy;
  };
  std::vector<Row> rows;
  bool mismatch = false;
  bool skipped = false;
  for (std::uint64_t m = range.lo; m <= range.hi; ++m) {
    Row row{m, big_m(FactoredModulus::factor(m)).big_m, std::nullopt, "infeasible"};
    OracleOptions options{kDefaultOrbitCap, common.worker_count(), {}};
    if (common.progress) {
      options.progress = [&err, m](std::uint64_t done, std::uint64_t total) {
        err << "verify m=" << m << ": " << done << "/" << total << '\n';
      };
    }
    try {
      const auto oracle = oracle_big_m(m, options);
      row.oracle = oracle.big_m;
      row.strategy = oracle.strategy == OracleStrategy::Enumeration ? "enumeration"
                                                                    : "all-maps-closed-form";
      mismatch = mismatch || oracle.big_m != row.theorem;
    } catch (const CapExceeded& e) {
      skipped = true;
      err << "m=" << m << ": skipped: " << e.what() << '\n';
    }
    rows.push_back(row);
  }

  auto match_text = [](const Row& r) -> std::string {
    if (!r.oracle) return "skipped";
    return *r.oracle == r.theorem ? "yes" : "NO";
  };
  switch (common.parsed_format()) {
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back({{"m", r.m},
                       {"theorem_M", r.theorem},
                       {"oracle_M", r.oracle ? Json(*r.oracle) : Json(nullptr)},
                       {"match", match_text(r)},
                       {"oracle_strategy", r.strategy}});
      }
      Json j{{"command", "verify"},
             {"rows", arr},
             {"all_match", !mismatch && !skipped},
             {"provenance",
              {{"theorem_M", "max over prime factors p of m(p)"},
               {"oracle_M", "exhaustive enumeration of polynomial functions"}}}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "m,theorem_M,oracle_M,match\n";
      for (const auto& r : rows) {
        out << r.m << ',' << r.theorem << ',' << (r.oracle ? std::to_string(*r.oracle) : "")
            << ',' << match_text(r) << '\n';
      }
      break;
    case Format::Plain:
      out << "   m  theorem  oracle  match\n";
      for (const auto& r : rows) {
        std::ostringstream line;
        line.width(4);
        line << r.m;
        line << "  ";
        line.width(7);
        line << r.theorem;
        line << "  ";
        line.width(6);
        line << (r.oracle ? std::to_string(*r.oracle) : "-");
        line << "  " << match_text(r);
        out << line.str() << '\n';
      }
      break;
  }
  if (mismatch) return kFalseVerdict;
  if (skipped) return kCapExceeded;
  return kOk;
}

// ---------------------------------------------------------------- hensel

int cmd_hensel(const std::string& poly_text, std::uint64_t p, std::optional<unsigned> base,
               std::optional<std::string> at_text, const CommonOptions& common,
               std::ostream& out) {
  const IntPolynomial f = parse_poly(poly_text);
  require_prime(p);
  const HenselProfile profile = hensel_profile(f, p);
  const mpz_class at = at_text ? mpz_class(*at_text, 10) : mpz_class(0);
  std::optional<bool> base_holds;
  std::optional<PAdicValuation> s_at;
  if (at_text || base) s_at = ord_p(derivative(f)(at), p);
  if (base) base_holds = check_lifting_base(f, p, at, *base);

  switch (common.parsed_format()) {
    case Format::Json: {
      Json orders = Json::array();
      for (const auto& s : profile.orders) {
        orders.push_back(s.is_infinite() ? Json("inf") : Json(s.value()));
      }
      Json j{{"command", "hensel"},
             {"poly", render(f)},
             {"p", p},
             {"orders", orders},
             {"max_finite_order", profile.max_finite_order},
             {"has_infinite_order", profile.has_infinite_order}};
      if (s_at) {
        j["at"] = at.get_str();
        j["s_at"] = s_at->is_infinite() ? Json("inf") : Json(s_at->value());
      }
      if (base) {
        j["base"] = *base;
        j["base_holds"] = *base_holds;
      }
      j["provenance"] = {{"orders", "ord_p of the derivative at each residue class"}};
      if (base) j["provenance"]["base_holds"] = "exhaustive lifting-base check over [0, p^r0)";
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "p,a,s\n";
      for (std::size_t a = 0; a < profile.orders.size(); ++a) {
        out << p << ',' << a << ',' << profile.orders[a].to_string() << '\n';
      }
      break;
    case Format::Plain:
      out << "poly: " << render(f) << '\n' << "p: " << p << '\n';
      for (std::size_t a = 0; a < profile.orders.size(); ++a) {
        out << "s(" << a << ") = " << profile.orders[a].to_string() << '\n';
      }
      if (s_at) out << "s at a = " << at.get_str() << ": " << s_at->to_string() << '\n';
      if (base) {
        out << "lifting base r0 = " << *base << " at a = " << at.get_str() << ": "
            << (*base_holds ? "holds" : "FAILS") << '\n';
      }
      out << "provenance: ord_p of the derivative at each residue class\n";
      break;
  }
  return base_holds.value_or(true) ? kOk : kFalseVerdict;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value sets and permutation tests for integer polynomials over Z/mZ",
               "resiring"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string poly, modulus, method = "auto", range;
  std::uint64_t prime = 0;
  std::optional<unsigned> base;
  std::optional<std::string> at;

  auto* valueset = app.add_subcommand("valueset", "Value set V(f mod m) and its size N(f, m)");
  valueset->add_option("--poly", poly, "Polynomial in x")->required();
  valueset->add_option("--modulus", modulus, "m, decimal or factored like 2^3*3")->required();
  add_common(valueset, common);

  auto* isperm = app.add_subcommand("isperm", "Decide whether f permutes Z/mZ");
  isperm->add_option("--poly", poly, "Polynomial in x")->required();
  isperm->add_option("--modulus", modulus, "m, decimal or factored")->required();
  isperm->add_option("--method", method, "Decision method")
      ->check(CLI::IsMember({"auto", "brute", "hensel", "rivest"}));
  add_common(isperm, common);

  auto* maxbound = app.add_subcommand("maxbound", "M(m) and a polynomial attaining it");
  maxbound->add_option("--modulus", modulus, "m >= 2, decimal or factored")->required();
  add_common(maxbound, common);

  auto* verify = app.add_subcommand("verify", "Compare M(m) against exhaustive enumeration");
  verify->add_option("--m-range", range, "Range lo..hi")->required();
  add_common(verify, common);

  auto* hensel = app.add_subcommand("hensel", "Derivative orders and lifting-base checks");
  hensel->add_option("--poly", poly, "Polynomial in x")->required();
  hensel->add_option("--prime", prime, "Prime p")->required();
  hensel->add_option("--base", base, "Check the lifting base r0");
  hensel->add_option("--at", at, "Integer a for the base check (default 0)");
  add_common(hensel, common);

  std::vector<std::string> argv_storage{"resiring"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*valueset) return cmd_valueset(poly, modulus, common, out);
    if (*isperm) return cmd_isperm(poly, modulus, method, common, out);
    if (*maxbound) return cmd_maxbound(modulus, common, out);
    if (*verify) return cmd_verify(range, common, out, err);
    if (*hensel) return cmd_hensel(poly, prime, base, at, common, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

Captured run_captured(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace resiring::cli
