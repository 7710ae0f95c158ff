#include "resiring/hensel.hpp"

#include <string>

#include "resiring/errors.hpp"

namespace resiring {

namespace {

unsigned finite_order(const IntPolynomial& df, std::uint64_t p, const mpz_class& a) {
  const auto s = detail::ord_p_unchecked(df(a), p);
  if (s.is_infinite()) {
    throw InapplicableError("f'(" + a.get_str() + ") = 0: the lifting statements do not apply");
  }
  return s.value();
}

bool congruent(const mpz_class& a, const mpz_class& b, const mpz_class& modulus) {
  return mpz_congruent_p(a.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

mpz_class power(std::uint64_t p, unsigned e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

}  // namespace

HenselProfile hensel_profile(const IntPolynomial& f, std::uint64_t p) {
  require_prime(p);
  HenselProfile profile{p, f, {}, 0, false};
  const IntPolynomial df = derivative(f);
  profile.orders.reserve(p);
  for (std::uint64_t a = 0; a < p; ++a) {
    const auto s = detail::ord_p_unchecked(df(mpz_class(a)), p);
    if (s.is_infinite()) {
      profile.has_infinite_order = true;
    } else if (s.value() > profile.max_finite_order) {
      profile.max_finite_order = s.value();
    }
    profile.orders.push_back(s);
  }
  return profile;
}

bool check_forward_lift(const IntPolynomial& f, std::uint64_t p, const mpz_class& a,
                        const mpz_class& b, unsigned r) {
  require_prime(p);
  const unsigned s = finite_order(derivative(f), p, a);
  if (r < 2 * s) {
    throw PreconditionError("forward lift needs r >= 2s (r = " + std::to_string(r) +
                            ", s = " + std::to_string(s) + ")");
  }
  if (!congruent(a, b, power(p, r - s))) return true;
  return congruent(f(a), f(b), power(p, r));
}

bool check_lifting_base(const IntPolynomial& f, std::uint64_t p, const mpz_class& a,
                        unsigned r0) {
  require_prime(p);
  const unsigned s = finite_order(derivative(f), p, a);
  if (r0 < 2 * s + 1) {
    throw PreconditionError("lifting base needs r0 >= 2s + 1 (r0 = " + std::to_string(r0) +
                            ", s = " + std::to_string(s) + ")");
  }
  const std::uint64_t modulus = pow_u64(p, r0);
  const std::uint64_t input_modulus = modulus / pow_u64(p, s);
  const ReducedPolynomial g(f, modulus);
  const Residue fa = eval_mod(f, a, modulus);
  const Residue a_in = eval_mod(IntPolynomial::identity(), a, input_modulus);
  for (Residue b = 0; b < modulus; ++b) {
    const bool inputs = b % input_modulus == a_in;
    const bool images = g(b) == fa;
    if (inputs != images) return false;
  }
  return true;
}

EquivalenceCheckResult check_equivalence_at(const IntPolynomial& f, std::uint64_t p,
                                            const mpz_class& a, const mpz_class& b, unsigned r) {
  require_prime(p);
  EquivalenceCheckResult out;
  out.s = finite_order(derivative(f), p, a);
  out.r = r;
  if (r < out.s) {
    throw PreconditionError("equivalence needs r >= s (r = " + std::to_string(r) +
                            ", s = " + std::to_string(out.s) + ")");
  }
  const std::uint64_t modulus = pow_u64(p, r);
  out.fa = eval_mod(f, a, modulus);
  out.fb = eval_mod(f, b, modulus);
  out.inputs_congruent = congruent(a, b, power(p, r - out.s));
  out.images_congruent = out.fa == out.fb;
  out.holds_forward = !out.inputs_congruent || out.images_congruent;
  out.holds_backward = !out.images_congruent || out.inputs_congruent;
  return out;
}

}  // namespace resiring
