#pragma once

#include <cstdint>
#include <vector>

#include "resiring/arith.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

/// s(a) = ord_p(f'(a)) at each representative a in [0, p).
struct HenselProfile {
  std::uint64_t prime;
  IntPolynomial poly;
  std::vector<PAdicValuation> orders;  // indexed by a
  unsigned max_finite_order = 0;
  bool has_infinite_order = false;
};

HenselProfile hensel_profile(const IntPolynomial& f, std::uint64_t p);

/// Both directions of  a ≡ b (mod p^(r-s))  <=>  f(a) ≡ f(b) (mod p^r)
/// at one instance, with s = ord_p(f'(a)).
struct EquivalenceCheckResult {
  bool holds_forward = false;   // a ≡ b ⟹ f(a) ≡ f(b)
  bool holds_backward = false;  // f(a) ≡ f(b) ⟹ a ≡ b
  unsigned s = 0;
  unsigned r = 0;
  bool inputs_congruent = false;  // a ≡ b (mod p^(r-s))
  bool images_congruent = false;  // f(a) ≡ f(b) (mod p^r)
  Residue fa = 0;                 // f(a) mod p^r
  Residue fb = 0;                 // f(b) mod p^r
};

/**
 * One instance of the forward lifting statement: when r >= 2s,
 * a ≡ b (mod p^(r-s)) forces f(a) ≡ f(b) (mod p^r). Returns the truth
 * of that implication for these inputs.
 *
 * Throws InapplicableError if f'(a) = 0, PreconditionError if r < 2s.
 */
bool check_forward_lift(const IntPolynomial& f, std::uint64_t p, const mpz_class& a,
                        const mpz_class& b, unsigned r);

/**
 * Exhaustively checks, over all b in [0, p^r0), that
 * a ≡ b (mod p^(r0-s)) <=> f(a) ≡ f(b) (mod p^r0). When this holds with
 * r0 >= 2s + 1 the equivalence propagates to every r >= r0.
 *
 * Throws InapplicableError if f'(a) = 0, PreconditionError if r0 < 2s + 1.
 */
bool check_lifting_base(const IntPolynomial& f, std::uint64_t p, const mpz_class& a, unsigned r0);

/// Evaluates both directions at (a, b, r). Requires r >= s.
/// Throws InapplicableError if f'(a) = 0.
EquivalenceCheckResult check_equivalence_at(const IntPolynomial& f, std::uint64_t p,
                                            const mpz_class& a, const mpz_class& b, unsigned r);

}  // namespace resiring
