#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resiring/arith.hpp"

namespace resiring {

/**
 * A polynomial in Z[X] stored densely: coefficient i multiplies X^i.
 *
 * The stored form is canonical: the highest stored coefficient is nonzero,
 * so the zero polynomial has no coefficients at all. Instances are
 * immutable once built.
 */
class IntPolynomial {
 public:
  using Degree = std::ptrdiff_t;
  /// degree() of the zero polynomial.
  static constexpr Degree kMinusInfinity = std::numeric_limits<Degree>::min();

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial monomial(const mpz_class& coeff, std::size_t exponent);
  static IntPolynomial identity() { return monomial(1, 1); }

  Degree degree() const noexcept {
    return coeffs_.empty() ? kMinusInfinity : static_cast<Degree>(coeffs_.size()) - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of X^i; zero past the degree.
  mpz_class coeff(std::size_t i) const;
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  /// Exact value at an integer point (Horner).
  mpz_class operator()(const mpz_class& x) const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<mpz_class> coeffs_;
};

/// Canonical text: descending exponents, "x^k" / "x", single spaces around
/// binary operators, "0" for the zero polynomial. parse_poly reads it back.
std::string render(const IntPolynomial& f);

/**
 * Parses `poly := term (('+'|'-') term)*`, `term := INT ['*' var] | var`,
 * `var := ('x'|'X') ['^' UINT]`. Whitespace is ignored and like terms are
 * summed. A leading sign before a bare variable ("-x^2") is also accepted,
 * matching what render() produces.
 *
 * Throws ParseError on malformed input.
 */
IntPolynomial parse_poly(std::string_view text);

/// f(a) mod m in [0, m), by exact Horner evaluation followed by one reduction.
Residue eval_mod(const IntPolynomial& f, const mpz_class& a, std::uint64_t m);

/**
 * f with coefficients reduced into [0, m): evaluation reduces at every
 * Horner step, so intermediates stay below m^2. Agrees with eval_mod.
 */
class ReducedPolynomial {
 public:
  ReducedPolynomial(const IntPolynomial& f, std::uint64_t m);

  std::uint64_t modulus() const noexcept { return m_; }
  std::span<const Residue> coeffs() const noexcept { return coeffs_; }

  Residue operator()(Residue a) const noexcept {
    a %= m_;
    Residue acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = add_mod(mul_mod(acc, a, m_), *it, m_);
    }
    return acc;
  }

 private:
  std::vector<Residue> coeffs_;
  std::uint64_t m_;
};

IntPolynomial derivative(const IntPolynomial& f);

/// The i-th Hasse derivative f^(i)/i!, i.e. sum_j C(j, i) a_j X^(j-i).
/// It is the coefficient of Y^i in f(X + Y).
IntPolynomial hasse_derivative(const IntPolynomial& f, std::size_t i);

/// ord_p of an integer; Infinity exactly for 0.
class PAdicValuation {
 public:
  static PAdicValuation infinity() { return PAdicValuation(); }
  static PAdicValuation finite(unsigned v) { return PAdicValuation(v); }

  bool is_infinite() const noexcept { return !value_; }
  /// Precondition: !is_infinite().
  unsigned value() const { return value_.value(); }

  friend bool operator==(const PAdicValuation&, const PAdicValuation&) = default;
  friend std::strong_ordering operator<=>(const PAdicValuation& a, const PAdicValuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const {
    return value_ ? std::to_string(*value_) : std::string("inf");
  }

 private:
  PAdicValuation() = default;
  explicit PAdicValuation(unsigned v) : value_(v) {}

  std::optional<unsigned> value_;
};

/// ord_p(n). Throws std::invalid_argument if p is not prime.
PAdicValuation ord_p(const mpz_class& n, std::uint64_t p);

namespace detail {
/// ord_p without the primality check, for inner loops.
PAdicValuation ord_p_unchecked(const mpz_class& n, std::uint64_t p);
}  // namespace detail

}  // namespace resiring
