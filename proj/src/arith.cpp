#include "resiring/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace resiring {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  auto r = checked_pow(base, exp);
  if (!r) {
    throw std::overflow_error(std::to_string(base) + "^" + std::to_string(exp) +
                              " does not fit in 64 bits");
  }
  return *r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

Residue inverse_mod(Residue a, std::uint64_t m) {
  if (m == 1) return 0;
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw std::invalid_argument(std::to_string(a) + " is not invertible modulo " +
                                std::to_string(m));
  }
  old_s %= static_cast<__int128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<Residue>(old_s);
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Congruence crt_combine(std::span<const Congruence> parts) {
  Congruence acc{0, 1};
  for (const auto& part : parts) {
    if (part.modulus == 0) throw std::invalid_argument("CRT modulus must be positive");
    if (gcd_u64(acc.modulus, part.modulus) != 1) {
      throw std::invalid_argument("CRT moduli are not pairwise coprime");
    }
    if (acc.modulus > UINT64_MAX / part.modulus) {
      throw std::overflow_error("CRT modulus exceeds 64 bits");
    }
    const std::uint64_t product = acc.modulus * part.modulus;
    // x = acc.residue + acc.modulus * t with t ≡ (r - acc.residue) / acc.modulus (mod n).
    const Residue target = part.residue % part.modulus;
    const Residue shift =
        (target + part.modulus - acc.residue % part.modulus) % part.modulus;
    const Residue t = mul_mod(shift, inverse_mod(acc.modulus % part.modulus, part.modulus),
                              part.modulus);
    acc.residue = static_cast<Residue>(
        (static_cast<unsigned __int128>(acc.modulus) * t + acc.residue) % product);
    acc.modulus = product;
  }
  return acc;
}

CrtBasis::CrtBasis(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto n : moduli_) {
    if (n == 0) throw std::invalid_argument("CRT modulus must be positive");
    if (gcd_u64(product_, n) != 1) {
      throw std::invalid_argument("CRT moduli are not pairwise coprime");
    }
    if (product_ > UINT64_MAX / n) throw std::overflow_error("CRT modulus exceeds 64 bits");
    product_ *= n;
  }
  idempotents_.reserve(moduli_.size());
  for (auto n : moduli_) {
    const std::uint64_t cofactor = product_ / n;
    idempotents_.push_back(mul_mod(cofactor, inverse_mod(cofactor % n, n), product_));
  }
}

Residue CrtBasis::combine(std::span<const Residue> residues) const {
  Residue acc = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    acc = add_mod(acc, mul_mod(residues[i], idempotents_[i], product_), product_);
  }
  return acc;
}

}  // namespace resiring
