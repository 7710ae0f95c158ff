#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "resiring/arith.hpp"
#include "resiring/modulus.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

enum class PermutationMethod { BruteForce, HenselCriterion, Rivest, CrtComposite };

std::string to_string(PermutationMethod method);

/// No a in [0, m) has f(a) ≡ value (mod m).
struct MissingValue {
  Residue value;
  friend bool operator==(const MissingValue&, const MissingValue&) = default;
};

/// f'(residue) ≡ 0 (mod prime), residue in [0, prime).
struct CriticalDerivative {
  std::uint64_t prime;
  Residue residue;
  friend bool operator==(const CriticalDerivative&, const CriticalDerivative&) = default;
};

/// first ≢ second (mod m) but f(first) ≡ f(second) (mod m).
struct CollidingPair {
  Residue first;
  Residue second;
  friend bool operator==(const CollidingPair&, const CollidingPair&) = default;
};

using PermutationWitness = std::variant<MissingValue, CriticalDerivative, CollidingPair>;

std::string describe(const PermutationWitness& witness);

/**
 * Whether f induces a permutation of Z/mZ. A negative verdict always
 * carries a witness; composite verdicts keep one sub-verdict per prime power.
 */
struct PermutationVerdict {
  bool is_permutation = false;
  PermutationMethod method = PermutationMethod::BruteForce;
  std::uint64_t modulus = 1;
  std::optional<PermutationWitness> witness;
  std::vector<PermutationVerdict> sub_verdicts;
};

/// Counts distinct images over [0, m). The witness is the smallest
/// missing value. Throws CapExceeded when m > cap.
PermutationVerdict is_permutation_brute(const IntPolynomial& f, std::uint64_t m,
                                        std::uint64_t cap = 10'000'000);

/**
 * The p-adic criterion on Z/p^rZ. For r = 1: f mod p is a permutation.
 * For r >= 2 additionally f'(a) ≢ 0 (mod p) for every a in [0, p).
 * Condition (1) is checked first: a failure there yields MissingValue,
 * otherwise a vanishing derivative yields CriticalDerivative.
 */
PermutationVerdict is_permutation_prime_power(const IntPolynomial& f, std::uint64_t p,
                                              unsigned r);

/// The same criterion on a coefficient vector already reduced into [0, p).
/// p is assumed prime.
PermutationVerdict criterion_verdict(std::span<const Residue> coeffs_mod_p, std::uint64_t p,
                                     unsigned r);

/**
 * Permutation test on Z/2^rZ (r >= 2) by three parities of the
 * coefficients: a1 odd, a2 + a4 + ... even, a3 + a5 + ... even.
 */
PermutationVerdict is_permutation_rivest(const IntPolynomial& f, unsigned r);

/// Composes the prime-power criterion over the factorisation of m.
/// A failing factor's witness is lifted to a witness modulo m.
PermutationVerdict is_permutation(const IntPolynomial& f, const FactoredModulus& m);

/// Re-checks a witness against f mod m from first principles.
bool witness_holds(const IntPolynomial& f, std::uint64_t m, const PermutationWitness& witness);

}  // namespace resiring
