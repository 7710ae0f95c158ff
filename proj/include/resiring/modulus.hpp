#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace resiring {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/**
 * A modulus m >= 1 with its factorisation p_1^r_1 ... p_k^r_k.
 * Primes are distinct and strictly increasing; m = 1 has no factors.
 */
class FactoredModulus {
 public:
  /// Factors m by trial division.
  static FactoredModulus factor(std::uint64_t m);

  /// Builds from a factor list; primes are validated, sorted and must be
  /// distinct. Throws std::invalid_argument / std::overflow_error.
  static FactoredModulus from_factors(std::vector<PrimePower> factors);

  /// Accepts decimal ("72") or factored ("2^3*3^2") text.
  /// Throws ParseError or std::invalid_argument.
  static FactoredModulus parse(std::string_view text);

  std::uint64_t value() const noexcept { return m_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }

  bool is_prime_power() const noexcept { return factors_.size() == 1; }
  /// Exponent of p in m (0 when p does not divide m).
  unsigned exponent_of(std::uint64_t p) const noexcept;

  /// "2^3*3^2" style; "1" for m = 1.
  std::string to_string() const;

  friend bool operator==(const FactoredModulus&, const FactoredModulus&) = default;

 private:
  std::uint64_t m_ = 1;
  std::vector<PrimePower> factors_;
};

}  // namespace resiring
