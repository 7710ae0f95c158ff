#pragma once

#include <random>
#include <vector>

#include "resiring/polynomial.hpp"

namespace resiring::testing {

/// Random dense polynomial with degree <= max_degree and |a_i| <= bound.
inline IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  return IntPolynomial(std::move(c));
}

/// Same, with coefficients drawn from [lo, hi].
inline IntPolynomial random_poly_in(std::mt19937_64& rng, int max_degree, long lo, long hi) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(lo, hi);
  std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  return IntPolynomial(std::move(c));
}

}  // namespace resiring::testing
