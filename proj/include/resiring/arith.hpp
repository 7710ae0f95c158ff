#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace resiring {

using Residue = std::uint64_t;

/// Deterministic trial division; intended for p below ~10^12.
bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument unless `p` is prime.
void require_prime(std::uint64_t p);

/// base^exp, or nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

/// base^exp; throws std::overflow_error when the result does not fit.
std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

inline Residue mul_mod(Residue a, Residue b, std::uint64_t m) {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
}

inline Residue add_mod(Residue a, Residue b, std::uint64_t m) {
  const Residue s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
Residue inverse_mod(Residue a, std::uint64_t m);

/// Euler's totient by trial factorisation.
std::uint64_t euler_phi(std::uint64_t n);

struct Congruence {
  Residue residue;
  std::uint64_t modulus;
};

/// Combines congruences with pairwise coprime moduli into one residue
/// modulo the product. Throws std::overflow_error if the product
/// exceeds 64 bits and std::invalid_argument if moduli share a factor.
Congruence crt_combine(std::span<const Congruence> parts);

/// Precomputed CRT basis for a fixed set of coprime moduli, so that
/// repeated recombination costs one multiply-add per component.
class CrtBasis {
 public:
  explicit CrtBasis(std::vector<std::uint64_t> moduli);

  std::uint64_t modulus() const noexcept { return product_; }
  std::span<const std::uint64_t> moduli() const noexcept { return moduli_; }

  /// residues[i] must lie in [0, moduli()[i]).
  Residue combine(std::span<const Residue> residues) const;

 private:
  std::vector<std::uint64_t> moduli_;
  std::vector<Residue> idempotents_;  // e_i ≡ 1 (mod n_i), ≡ 0 (mod n_j)
  std::uint64_t product_ = 1;
};

}  // namespace resiring
