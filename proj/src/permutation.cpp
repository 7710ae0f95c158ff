#include "resiring/permutation.hpp"

#include <stdexcept>

#include "resiring/errors.hpp"

namespace resiring {

std::string to_string(PermutationMethod method) {
  switch (method) {
    case PermutationMethod::BruteForce: return "brute";
    case PermutationMethod::HenselCriterion: return "hensel";
    case PermutationMethod::Rivest: return "rivest";
    case PermutationMethod::CrtComposite: return "crt";
  }
  return "unknown";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Residue horner_mod(std::span<const Residue> c, Residue a, std::uint64_t m) {
  Residue acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, a, m), *it, m);
  return acc;
}

PermutationVerdict failed(PermutationMethod method, std::uint64_t m, PermutationWitness w) {
  PermutationVerdict v;
  v.is_permutation = false;
  v.method = method;
  v.modulus = m;
  v.witness = w;
  return v;
}

PermutationVerdict passed(PermutationMethod method, std::uint64_t m) {
  PermutationVerdict v;
  v.is_permutation = true;
  v.method = method;
  v.modulus = m;
  return v;
}

}  // namespace

std::string describe(const PermutationWitness& witness) {
  return std::visit(
      overloaded{
          [](const MissingValue& w) { return "MissingValue(" + std::to_string(w.value) + ")"; },
          [](const CriticalDerivative& w) {
            return "CriticalDerivative(" + std::to_string(w.residue) + ") mod " +
                   std::to_string(w.prime);
          },
          [](const CollidingPair& w) {
            return "CollidingPair(" + std::to_string(w.first) + ", " + std::to_string(w.second) +
                   ")";
          }},
      witness);
}

PermutationVerdict is_permutation_brute(const IntPolynomial& f, std::uint64_t m,
                                        std::uint64_t cap) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  if (m > cap) {
    throw CapExceeded("brute-force permutation test: modulus " + std::to_string(m) +
                      " exceeds cap " + std::to_string(cap));
  }
  const ReducedPolynomial g(f, m);
  std::vector<bool> hit(m, false);
  for (Residue a = 0; a < m; ++a) hit[g(a)] = true;
  for (Residue b = 0; b < m; ++b) {
    if (!hit[b]) return failed(PermutationMethod::BruteForce, m, MissingValue{b});
  }
  return passed(PermutationMethod::BruteForce, m);
}

PermutationVerdict criterion_verdict(std::span<const Residue> c, std::uint64_t p, unsigned r) {
  if (r == 0) throw std::invalid_argument("exponent must be >= 1");
  const std::uint64_t m = pow_u64(p, r);

  // (1) f mod p permutes Z/pZ.
  std::vector<bool> hit(p, false);
  for (Residue a = 0; a < p; ++a) hit[horner_mod(c, a, p)] = true;
  for (Residue b = 0; b < p; ++b) {
    if (!hit[b]) return failed(PermutationMethod::HenselCriterion, m, MissingValue{b});
  }
  if (r == 1) return passed(PermutationMethod::HenselCriterion, m);

  // (2) f' has no root mod p; f' mod p only depends on a mod p.
  std::vector<Residue> dc;
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(mul_mod(c[i], i % p, p));
  for (Residue a = 0; a < p; ++a) {
    if (horner_mod(dc, a, p) == 0) {
      return failed(PermutationMethod::HenselCriterion, m, CriticalDerivative{p, a});
    }
  }
  return passed(PermutationMethod::HenselCriterion, m);
}

PermutationVerdict is_permutation_prime_power(const IntPolynomial& f, std::uint64_t p,
                                              unsigned r) {
  require_prime(p);
  const ReducedPolynomial g(f, p);
  return criterion_verdict(g.coeffs(), p, r);
}

PermutationVerdict is_permutation_rivest(const IntPolynomial& f, unsigned r) {
  if (r < 2) throw std::invalid_argument("the parity test needs modulus 2^r with r >= 2");
  const std::uint64_t m = pow_u64(2, r);
  const auto& a = f.coeffs();
  auto odd = [](const mpz_class& z) { return mpz_odd_p(z.get_mpz_t()) != 0; };
  bool even_sum = false;  // parity of a2 + a4 + ...
  bool odd_sum = false;   // parity of a3 + a5 + ...
  for (std::size_t i = 2; i < a.size(); ++i) {
    if (!odd(a[i])) continue;
    if (i % 2 == 0) {
      even_sum = !even_sum;
    } else {
      odd_sum = !odd_sum;
    }
  }
  // f'(0) ≡ a1 and f'(1) ≡ a1 + a3 + a5 + ... (mod 2).
  if (!odd(f.coeff(1))) return failed(PermutationMethod::Rivest, m, CriticalDerivative{2, 0});
  if (odd_sum) return failed(PermutationMethod::Rivest, m, CriticalDerivative{2, 1});
  // Otherwise f(1) - f(0) is even: f mod 2 is constant a0 and misses a0 + 1.
  if (even_sum) {
    return failed(PermutationMethod::Rivest, m, MissingValue{odd(f.coeff(0)) ? 0u : 1u});
  }
  return passed(PermutationMethod::Rivest, m);
}

namespace {

/// Lifts a prime-power witness to Z/mZ; other CRT components are set to 0.
PermutationWitness lift_witness(const PermutationWitness& w, const PrimePower& pp,
                                const FactoredModulus& m) {
  const std::uint64_t q = pp.value();
  const std::uint64_t cofactor = m.value() / q;
  // x ≡ t (mod q), x ≡ 0 (mod cofactor)
  auto lift = [&](Residue t) {
    const Congruence parts[] = {{t % q, q}, {0, cofactor}};
    return crt_combine(parts).residue;
  };
  return std::visit(
      overloaded{
          [&](const MissingValue& mv) -> PermutationWitness { return MissingValue{mv.value}; },
          [&](const CriticalDerivative& cd) -> PermutationWitness {
            // f(a0 + p^(r-1)) ≡ f(a0) (mod p^r) when f'(a0) ≡ 0 (mod p) and r >= 2.
            return CollidingPair{lift(cd.residue), lift(cd.residue + q / pp.prime)};
          },
          [&](const CollidingPair& cp) -> PermutationWitness {
            return CollidingPair{lift(cp.first), lift(cp.second)};
          }},
      w);
}

}  // namespace

PermutationVerdict is_permutation(const IntPolynomial& f, const FactoredModulus& m) {
  PermutationVerdict v = passed(PermutationMethod::CrtComposite, m.value());
  for (const auto& pp : m.factors()) {
    auto sub = is_permutation_prime_power(f, pp.prime, pp.exponent);
    if (!sub.is_permutation && v.is_permutation) {
      v.is_permutation = false;
      v.witness = lift_witness(*sub.witness, pp, m);
    }
    v.sub_verdicts.push_back(std::move(sub));
  }
  return v;
}

bool witness_holds(const IntPolynomial& f, std::uint64_t m, const PermutationWitness& witness) {
  return std::visit(
      overloaded{[&](const MissingValue& w) {
                   if (w.value >= m) return false;
                   const ReducedPolynomial g(f, m);
                   for (Residue a = 0; a < m; ++a) {
                     if (g(a) == w.value) return false;
                   }
                   return true;
                 },
                 [&](const CriticalDerivative& w) {
                   return m % w.prime == 0 && w.residue < w.prime &&
                          eval_mod(derivative(f), w.residue, w.prime) == 0;
                 },
                 [&](const CollidingPair& w) {
                   return w.first % m != w.second % m &&
                          eval_mod(f, w.first, m) == eval_mod(f, w.second, m);
                 }},
      witness);
}

}  // namespace resiring
