#pragma once

#include <cstdint>
#include <vector>

#include "resiring/arith.hpp"
#include "resiring/modulus.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

/// Largest modulus value_set / n_value enumerate directly.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Value set of f modulo one prime power of the factorisation.
struct FactorValueSet {
  PrimePower factor;
  std::uint64_t modulus;
  std::vector<Residue> values;
  std::uint64_t size;
};

/**
 * V(f mod m) and N(f, m), together with the value set modulo each prime
 * power of m. `values` is sorted; it is empty with `materialized == false`
 * only when CRT recombination was skipped for exceeding its cap.
 */
struct ValueSetReport {
  FactoredModulus modulus;
  std::vector<Residue> values;
  std::uint64_t size = 0;
  std::vector<FactorValueSet> factors;
  bool is_surjective = false;
  bool materialized = true;
};

/// Enumerates f(a) mod m over a in [0, m). Throws CapExceeded when m > cap.
ValueSetReport value_set(const IntPolynomial& f, std::uint64_t m,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// N(f, m) without keeping the set.
std::uint64_t n_value(const IntPolynomial& f, std::uint64_t m,
                      std::uint64_t cap = kDefaultEnumerationCap);

/**
 * Builds V(f mod m) from the prime-power value sets by CRT recombination
 * of every tuple. The size is always the product of the factor sizes; the
 * full set is only materialised when that product is at most
 * `materialize_cap`. Each prime power must itself be at most `cap`.
 */
ValueSetReport value_set_via_crt(const IntPolynomial& f, const FactoredModulus& m,
                                 std::uint64_t cap = kDefaultEnumerationCap,
                                 std::uint64_t materialize_cap = kDefaultEnumerationCap);

/// S_r(a0) = { a0 + l p + k p^(r-1) : 0 <= l < p^(r-2), 1 <= k < p } in [0, p^r).
struct CarvedResidueSet {
  std::uint64_t prime;
  unsigned exponent;
  Residue critical_residue;
  std::vector<Residue> members;  // sorted
};

/// Throws std::invalid_argument unless p is prime, r >= 2, a0 < p.
CarvedResidueSet carved_set(std::uint64_t p, unsigned r, Residue a0);

/// True iff f mod p^r is injective on [0, p^r) minus S_r(a0).
bool restricted_injectivity_check(const IntPolynomial& f, std::uint64_t p, unsigned r, Residue a0,
                                  std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace resiring
