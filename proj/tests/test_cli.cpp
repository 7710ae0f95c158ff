#include <doctest.h>

#include <json.hpp>

#include <algorithm>

#include "cli.hpp"

using resiring::cli::run_captured;
using nlohmann::json;

namespace {

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run_captured(args);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("valueset") {
  const auto r = run_captured({"valueset", "--poly", "x^3+2*x", "--modulus", "8"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "N = 6"));
  CHECK(contains(r.out, "{0, 1, 3, 4, 5, 7}"));

  const auto id = run_captured({"valueset", "--poly", "x", "--modulus", "10"});
  CHECK(contains(id.out, "N = 10"));
  CHECK(contains(id.out, "surjective: yes"));

  const auto j = run_json({"valueset", "--poly", "x^2", "--modulus", "9"});
  CHECK(j["n"] == 4);
  CHECK(j["values"] == json::array({0, 1, 4, 7}));
  CHECK(j["m"] == 9);
  CHECK(j["factors"].size() == 1);
}

TEST_CASE("valueset display cap") {
  const auto r = run_captured({"valueset", "--poly", "x", "--modulus", "200", "--display-cap", "10"});
  CHECK(r.exit_code == 0);
  CHECK_FALSE(contains(r.out, " 100,"));
  const auto j = run_json({"valueset", "--poly", "x", "--modulus", "200", "--display-cap", "10"});
  CHECK(j["values"].size() == 200);
  const auto csv = run_captured({"valueset", "--poly", "x", "--modulus", "200", "--format", "csv"});
  CHECK(csv.out.rfind("m,n,value\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 201);
}

TEST_CASE("valueset accepts factored moduli") {
  const auto a = run_json({"valueset", "--poly", "x^2", "--modulus", "2^3*3^2"});
  const auto b = run_json({"valueset", "--poly", "x^2", "--modulus", "72"});
  CHECK(a == b);
}

TEST_CASE("isperm") {
  const auto rivest = run_captured({"isperm", "--poly", "2*x^3+x", "--modulus", "16", "--method", "rivest"});
  CHECK(rivest.exit_code == 0);
  CHECK(contains(rivest.out, "verdict: permutation"));

  const auto cubic = run_captured({"isperm", "--poly", "x^3+2*x", "--modulus", "4"});
  CHECK(cubic.exit_code == 1);
  CHECK(contains(cubic.out, "CriticalDerivative(0)"));

  CHECK(run_captured({"isperm", "--poly", "x", "--modulus", "97"}).exit_code == 0);
  CHECK(run_captured({"isperm", "--poly", "x", "--modulus", "12", "--method", "rivest"}).exit_code == 2);
  CHECK(run_captured({"isperm", "--poly", "x^2", "--modulus", "9", "--method", "brute"}).exit_code == 1);

  const auto j = run_json({"isperm", "--poly", "x^3+2*x", "--modulus", "12"});
  CHECK(j["verdict"] == false);
  CHECK(j.contains("witness"));
  CHECK(j["method"] == "crt");
}

TEST_CASE("maxbound") {
  const auto r = run_captured({"maxbound", "--modulus", "27"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "M = 21"));
  CHECK(contains(r.out, "x^5 + 3*x"));

  const auto j = run_json({"maxbound", "--modulus", "12"});
  CHECK(j["M"] == 9);
  CHECK(j["exception"] == true);
  CHECK(j["per_prime"].size() == 2);

  CHECK(run_json({"maxbound", "--modulus", "6"})["M"] == 4);
  CHECK(run_captured({"maxbound", "--modulus", "1"}).exit_code == 2);
}

TEST_CASE("verify") {
  const auto r = run_captured({"verify", "--m-range", "2..16"});
  CHECK(r.exit_code == 0);
  const auto j = run_json({"verify", "--m-range", "2..16"});
  CHECK(j["rows"].size() == 15);
  CHECK(j["all_match"] == true);

  const auto one = run_json({"verify", "--m-range", "2..2"});
  REQUIRE(one["rows"].size() == 1);
  CHECK(one["rows"][0]["m"] == 2);
  CHECK(one["rows"][0]["oracle_M"] == 1);

  CHECK(run_captured({"verify", "--m-range", "5..2"}).exit_code == 2);
  CHECK(run_captured({"verify", "--m-range", "22..22"}).exit_code == 3);
}

TEST_CASE("hensel") {
  const auto r = run_captured({"hensel", "--poly", "x^3+2*x", "--prime", "2"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "s(0) = 1"));
  CHECK(contains(r.out, "s(1) = 0"));

  const auto c = run_captured({"hensel", "--poly", "x^2+6*x", "--prime", "3", "--base", "3", "--at", "0"});
  CHECK(c.exit_code == 1);
  CHECK(contains(c.out, "FAILS"));

  const auto id = run_json({"hensel", "--poly", "x", "--prime", "5"});
  CHECK(id["orders"] == json::array({0, 0, 0, 0, 0}));
  CHECK(run_captured({"hensel", "--poly", "x", "--prime", "4"}).exit_code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run_captured({}).exit_code == 2);
  CHECK(run_captured({"nonsense"}).exit_code == 2);
  const auto bad = run_captured({"valueset", "--poly", "x^^2", "--modulus", "8"});
  CHECK(bad.exit_code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
  CHECK(run_captured({"valueset", "--poly", "x", "--modulus", "0"}).exit_code == 2);
  CHECK(run_captured({"valueset", "--poly", "x", "--modulus", "100", "--cap", "10"}).exit_code == 3);
}

TEST_CASE("determinism") {
  const std::vector<std::string> args{"verify", "--m-range", "2..12", "--format", "csv"};
  const auto a = run_captured(args);
  const auto b = run_captured(args);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("m,theorem_M,oracle_M,match\n", 0) == 0);
}
