#include "resiring/modulus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "resiring/arith.hpp"
#include "resiring/errors.hpp"

namespace resiring {

std::uint64_t PrimePower::value() const { return pow_u64(prime, exponent); }

FactoredModulus FactoredModulus::factor(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  FactoredModulus out;
  out.m_ = m;
  for (std::uint64_t p = 2; p <= m / p; ++p) {
    unsigned r = 0;
    while (m % p == 0) {
      m /= p;
      ++r;
    }
    if (r > 0) out.factors_.push_back({p, r});
  }
  if (m > 1) out.factors_.push_back({m, 1});
  return out;
}

FactoredModulus FactoredModulus::from_factors(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredModulus out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    require_prime(f.prime);
    if (f.exponent == 0) throw std::invalid_argument("prime exponents must be >= 1");
    if (i > 0 && factors[i - 1].prime == f.prime) {
      throw std::invalid_argument("duplicate prime " + std::to_string(f.prime));
    }
    const std::uint64_t q = f.value();
    if (out.m_ > UINT64_MAX / q) throw std::overflow_error("modulus exceeds 64 bits");
    out.m_ *= q;
  }
  out.factors_ = std::move(factors);
  return out;
}

namespace {

std::uint64_t parse_uint(std::string_view text, std::size_t offset) {
  std::uint64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    if (ec == std::errc::result_out_of_range) {
      throw ParseError("integer out of range", offset);
    }
    throw ParseError("expected a positive integer", offset + static_cast<std::size_t>(ptr - first));
  }
  return v;
}

std::string_view strip(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FactoredModulus FactoredModulus::parse(std::string_view text) {
  if (text.find_first_of("^*") == std::string_view::npos) {
    std::size_t offset = 0;
    const auto body = strip(text, offset);
    const auto m = parse_uint(body, offset);
    if (m == 0) throw ParseError("modulus must be positive", offset);
    return factor(m);
  }
  std::vector<PrimePower> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t star = std::min(text.find('*', start), text.size());
    std::size_t offset = start;
    const auto piece = strip(text.substr(start, star - start), offset);
    const std::size_t caret = piece.find('^');
    PrimePower pp{0, 1};
    if (caret == std::string_view::npos) {
      pp.prime = parse_uint(piece, offset);
    } else {
      std::size_t exp_offset = offset + caret + 1;
      pp.prime = parse_uint(strip(piece.substr(0, caret), offset), offset);
      const auto exp = parse_uint(strip(piece.substr(caret + 1), exp_offset), exp_offset);
      if (exp == 0 || exp > 64) throw ParseError("exponent must be in [1, 64]", exp_offset);
      pp.exponent = static_cast<unsigned>(exp);
    }
    if (!is_prime(pp.prime)) {
      throw ParseError(std::to_string(pp.prime) + " is not prime", offset);
    }
    factors.push_back(pp);
    start = star + 1;
  }
  return from_factors(std::move(factors));
}

unsigned FactoredModulus::exponent_of(std::uint64_t p) const noexcept {
  for (const auto& f : factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

std::string FactoredModulus::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += std::to_string(f.prime);
    if (f.exponent > 1) out += '^' + std::to_string(f.exponent);
  }
  return out;
}

}  // namespace resiring
