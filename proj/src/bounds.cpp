#include "resiring/bounds.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "resiring/arith.hpp"

namespace resiring {

IntPolynomial extremal_poly(std::uint64_t p) {
  require_prime(p);
  std::vector<mpz_class> c(2 * p);
  c[2 * p - 1] = 1;
  c[1] = mpz_class(p);
  return IntPolynomial(std::move(c));
}

std::uint64_t m_prime_power(std::uint64_t p, unsigned r) {
  require_prime(p);
  if (r == 0) throw std::invalid_argument("exponent must be >= 1");
  if (r == 1) return p - 1;
  return pow_u64(p, r - 2) * (p * p - p + 1);
}

std::uint64_t m_of_p(const FactoredModulus& m, std::uint64_t p) {
  const unsigned r = m.exponent_of(p);
  if (r == 0) {
    throw std::invalid_argument(std::to_string(p) + " does not divide " +
                                std::to_string(m.value()));
  }
  if (r == 1) return m.value() / p * (p - 1);
  return m.value() / (p * p) * (p * p - p + 1);
}

IntPolynomial collapsing_poly(std::uint64_t p) {
  require_prime(p);
  // Lagrange interpolation over Z/pZ of the table t(0) = 1, t(a) = a.
  std::vector<Residue> result(p, 0);
  for (Residue i = 0; i < p; ++i) {
    const Residue target = i == 0 ? 1 % p : i;
    if (target == 0) continue;
    // basis_i(x) = prod_{j != i} (x - j) / (i - j)
    std::vector<Residue> basis{1};
    Residue denom = 1;
    for (Residue j = 0; j < p; ++j) {
      if (j == i) continue;
      std::vector<Residue> next(basis.size() + 1, 0);
      const Residue neg_j = (p - j) % p;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] = add_mod(next[k + 1], basis[k], p);
        next[k] = add_mod(next[k], mul_mod(basis[k], neg_j, p), p);
      }
      basis = std::move(next);
      denom = mul_mod(denom, (i + p - j) % p, p);
    }
    const Residue scale = mul_mod(target, inverse_mod(denom, p), p);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      result[k] = add_mod(result[k], mul_mod(basis[k], scale, p), p);
    }
  }
  std::vector<mpz_class> coeffs;
  for (auto c : result) coeffs.emplace_back(c);
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial assemble_crt_poly(const std::vector<CrtPart>& parts) {
  std::set<std::uint64_t> primes;
  std::vector<std::uint64_t> moduli;
  std::size_t length = 0;
  for (const auto& part : parts) {
    require_prime(part.prime);
    if (part.exponent == 0) throw std::invalid_argument("exponents must be >= 1");
    if (!primes.insert(part.prime).second) {
      throw std::invalid_argument("duplicate prime " + std::to_string(part.prime));
    }
    moduli.push_back(pow_u64(part.prime, part.exponent));
    length = std::max(length, part.poly.coeffs().size());
  }
  const CrtBasis basis(moduli);
  std::vector<ReducedPolynomial> reduced;
  for (std::size_t i = 0; i < parts.size(); ++i) reduced.emplace_back(parts[i].poly, moduli[i]);

  std::vector<mpz_class> coeffs(length);
  std::vector<Residue> residues(parts.size());
  for (std::size_t k = 0; k < length; ++k) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto c = reduced[i].coeffs();
      residues[i] = k < c.size() ? c[k] : 0;
    }
    coeffs[k] = mpz_class(basis.combine(residues));
  }
  return IntPolynomial(std::move(coeffs));
}

bool is_two_power_times_three(const FactoredModulus& m) {
  const auto& f = m.factors();
  return f.size() == 2 && f[0].prime == 2 && f[0].exponent >= 2 && f[1].prime == 3 &&
         f[1].exponent == 1;
}

BoundReport big_m(const FactoredModulus& m) {
  if (m.value() < 2) {
    throw std::invalid_argument("M(m) is undefined for m = 1: every map of a point is a permutation");
  }
  BoundReport report;
  report.modulus = m;
  for (const auto& pp : m.factors()) {
    const std::uint64_t value = m_of_p(m, pp.prime);
    report.per_prime[pp.prime] = value;
    // factors are ascending, so >= keeps the larger prime on ties
    if (value >= report.big_m) {
      report.big_m = value;
      report.argmax_prime = pp.prime;
    }
  }
  report.exception_flag = is_two_power_times_three(m);

  std::vector<CrtPart> parts;
  for (const auto& pp : m.factors()) {
    if (pp.prime != report.argmax_prime) {
      parts.push_back({pp.prime, pp.exponent, IntPolynomial::identity()});
    } else if (pp.exponent >= 2) {
      parts.push_back({pp.prime, pp.exponent, extremal_poly(pp.prime)});
    } else {
      parts.push_back({pp.prime, pp.exponent, collapsing_poly(pp.prime)});
    }
  }
  report.achieving_poly = assemble_crt_poly(parts);
  return report;
}

}  // namespace resiring
