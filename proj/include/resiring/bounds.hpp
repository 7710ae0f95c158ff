#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "resiring/modulus.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

/// X^(2p-1) + pX: a permutation mod p that is not one mod p^r for r >= 2,
/// and whose value set has the largest possible size among such maps.
IntPolynomial extremal_poly(std::uint64_t p);

/// M(p^r): p - 1 for r = 1, p^(r-2) (p^2 - p + 1) for r >= 2.
std::uint64_t m_prime_power(std::uint64_t p, unsigned r);

/// m(p) = m (1 - 1/p) if p || m, m (1 - 1/p + 1/p^2) if p^2 | m.
/// Throws std::invalid_argument if p does not divide m.
std::uint64_t m_of_p(const FactoredModulus& m, std::uint64_t p);

/// A non-permutation of Z/pZ with p - 1 values: 0 -> 1, a -> a otherwise,
/// obtained by interpolation mod p. Coefficients lie in [0, p).
IntPolynomial collapsing_poly(std::uint64_t p);

struct CrtPart {
  std::uint64_t prime;
  unsigned exponent;
  IntPolynomial poly;
};

/// A polynomial congruent to each part's polynomial modulo p_i^r_i,
/// coefficient by coefficient, with coefficients in [0, m).
/// Throws std::invalid_argument on duplicate primes.
IntPolynomial assemble_crt_poly(const std::vector<CrtPart>& parts);

struct BoundReport {
  FactoredModulus modulus;
  std::uint64_t big_m = 0;
  std::map<std::uint64_t, std::uint64_t> per_prime;  // p_i -> m(p_i)
  std::uint64_t argmax_prime = 0;
  bool exception_flag = false;  // m = 2^r * 3 with r >= 2
  IntPolynomial achieving_poly;
};

/**
 * M(m) = max_i m(p_i), the largest value-set size of a non-permutation
 * polynomial mod m, together with a polynomial attaining it. Ties between
 * primes go to the larger prime. Throws std::invalid_argument for m = 1.
 */
BoundReport big_m(const FactoredModulus& m);

/// True iff m = 2^r * 3 with r >= 2.
bool is_two_power_times_three(const FactoredModulus& m);

}  // namespace resiring
