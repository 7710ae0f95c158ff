#include <doctest.h>

#include "resiring/errors.hpp"
#include "resiring/polynomial.hpp"
#include "support.hpp"

using namespace resiring;

TEST_CASE("parse_poly reads terms into dense form") {
  CHECK(parse_poly("x^3 + 2*x") == IntPolynomial{0, 2, 0, 1});
  CHECK(parse_poly("0").is_zero());
  CHECK(parse_poly("0").degree() == IntPolynomial::kMinusInfinity);
  CHECK(parse_poly("x^2 - 2*x + x") == IntPolynomial{0, -1, 1});
  CHECK(parse_poly("  X ^ 2 +7 ") == IntPolynomial{7, 0, 1});
  CHECK(parse_poly("-3*x + x - -3") == IntPolynomial{3, -2});
  CHECK(parse_poly("x^2 - x^2").is_zero());
  CHECK(parse_poly("123456789012345678901234567890*x").coeff(1) ==
        mpz_class("123456789012345678901234567890"));
}

TEST_CASE("parse_poly reports malformed input with a position") {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_poly(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    FAIL("expected a ParseError for " << text);
    return 0;
  };
  CHECK(position_of("x^^2") == 2);
  CHECK(position_of("x + ") == 4);
  CHECK(position_of("2*") == 2);
  CHECK(position_of("3 y") == 2);
  CHECK(position_of("") == 0);
  CHECK_THROWS_AS(parse_poly("x^-1"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^99999999"), ParseError);
  CHECK_THROWS_AS(parse_poly("2x"), ParseError);
}

TEST_CASE("render is canonical") {
  CHECK(render(IntPolynomial{0, 2, 0, 1}) == "x^3 + 2*x");
  CHECK(render(IntPolynomial{1, 0, -1}) == "-x^2 + 1");
  CHECK(render(IntPolynomial{-4, -1}) == "-x - 4");
  CHECK(render(IntPolynomial{}) == "0");
  CHECK(render(IntPolynomial{5}) == "5");
}

TEST_CASE("eval_mod") {
  CHECK(eval_mod(IntPolynomial{0, 2, 0, 1}, 2, 8) == 4);
  CHECK(eval_mod(IntPolynomial::identity(), 5, 3) == 2);
  CHECK(eval_mod(IntPolynomial{0, 0, 1}, 7, 9) == 4);
  CHECK(eval_mod(IntPolynomial{0, 1}, -1, 5) == 4);
  CHECK(eval_mod(IntPolynomial{3}, 0, 1) == 0);
}

TEST_CASE("derivative") {
  CHECK(derivative(IntPolynomial{0, 2, 0, 1}) == IntPolynomial{2, 0, 3});
  CHECK(derivative(IntPolynomial{7}).is_zero());
  CHECK(derivative(IntPolynomial{0, 3, 0, 0, 0, 1}) == IntPolynomial{3, 0, 0, 0, 5});
}

TEST_CASE("hasse_derivative") {
  const IntPolynomial f{0, 2, 0, 1};
  CHECK(hasse_derivative(f, 2) == IntPolynomial{0, 3});
  CHECK(hasse_derivative(f, 0) == f);
  CHECK(hasse_derivative(f, 4).is_zero());

  const IntPolynomial g{0, 3, 0, 0, 0, 1};
  CHECK(hasse_derivative(g, 2) == IntPolynomial{0, 0, 0, 10});
  // Independent route: f''/2 by repeated derivative and exact division.
  auto second = derivative(derivative(g)).coeffs();
  for (auto& c : second) {
    CHECK(mpz_divisible_ui_p(c.get_mpz_t(), 2) != 0);
    c /= 2;
  }
  CHECK(hasse_derivative(g, 2) == IntPolynomial(second));
}

TEST_CASE("ord_p") {
  CHECK(ord_p(12, 2) == PAdicValuation::finite(2));
  CHECK(ord_p(0, 3).is_infinite());
  CHECK(ord_p(-75, 5) == PAdicValuation::finite(2));
  const IntPolynomial f{0, 5, 0, 0, 0, 0, 0, 0, 0, 1};  // x^9 + 5x
  CHECK(ord_p(derivative(f)(0), 5) == PAdicValuation::finite(1));
  CHECK_THROWS_AS(ord_p(12, 4), std::invalid_argument);
  CHECK(PAdicValuation::finite(100) < PAdicValuation::infinity());
}

TEST_CASE("property: Taylor expansion through Hasse derivatives") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> point(-50, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = testing::random_poly(rng, 8, 100);
    const mpz_class a = point(rng), y = point(rng);
    mpz_class sum = 0, ypow = 1;
    for (IntPolynomial::Degree i = 0; i <= std::max<IntPolynomial::Degree>(f.degree(), 0); ++i) {
      sum += hasse_derivative(f, static_cast<std::size_t>(i))(a) * ypow;
      ypow *= y;
    }
    CHECK(f(a + y) == sum);
  }
}

TEST_CASE("property: congruent inputs give equal residues") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> mod(1, 1000);
  std::uniform_int_distribution<long> point(-10000, 10000), shift(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = testing::random_poly(rng, 8, 100);
    const std::uint64_t m = mod(rng);
    const mpz_class a = point(rng);
    const mpz_class b = a + mpz_class(shift(rng)) * mpz_class(m);
    const auto fa = eval_mod(f, a, m);
    CHECK(fa == eval_mod(f, b, m));
    CHECK(fa < m);
    // Step-reduced Horner agrees with exact evaluation.
    const ReducedPolynomial g(f, m);
    const mpz_class a_mod = a % mpz_class(m) + (a < 0 ? mpz_class(m) : mpz_class(0));
    CHECK(g(a_mod.get_ui() % m) == fa);
  }
}

TEST_CASE("property: first Hasse derivative is the derivative; render round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = testing::random_poly(rng, 12, 1000);
    CHECK(hasse_derivative(f, 1) == derivative(f));
    CHECK(parse_poly(render(f)) == f);
  }
}
