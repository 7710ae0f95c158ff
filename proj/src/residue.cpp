#include "resiring/residue.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "resiring/errors.hpp"

namespace resiring {

namespace {

void check_cap(std::uint64_t m, std::uint64_t cap) {
  if (m > cap) {
    throw CapExceeded("modulus " + std::to_string(m) + " exceeds the enumeration cap " +
                      std::to_string(cap));
  }
}

/// Marks f(a) mod m for all a and returns the image as a bitmap.
std::vector<bool> image_bitmap(const IntPolynomial& f, std::uint64_t m) {
  const ReducedPolynomial g(f, m);
  std::vector<bool> hit(m, false);
  for (Residue a = 0; a < m; ++a) hit[g(a)] = true;
  return hit;
}

std::vector<Residue> collect(const std::vector<bool>& hit) {
  std::vector<Residue> values;
  for (Residue v = 0; v < hit.size(); ++v) {
    if (hit[v]) values.push_back(v);
  }
  return values;
}

std::vector<FactorValueSet> factor_value_sets(const IntPolynomial& f, const FactoredModulus& m,
                                              std::uint64_t cap) {
  std::vector<FactorValueSet> out;
  for (const auto& pp : m.factors()) {
    const std::uint64_t q = pp.value();
    check_cap(q, cap);
    auto values = collect(image_bitmap(f, q));
    const std::uint64_t size = values.size();
    out.push_back({pp, q, std::move(values), size});
  }
  return out;
}

}  // namespace

ValueSetReport value_set(const IntPolynomial& f, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  check_cap(m, cap);
  ValueSetReport report;
  report.modulus = FactoredModulus::factor(m);
  report.values = collect(image_bitmap(f, m));
  report.size = report.values.size();
  report.is_surjective = report.size == m;
  report.factors = factor_value_sets(f, report.modulus, cap);
  return report;
}

std::uint64_t n_value(const IntPolynomial& f, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  check_cap(m, cap);
  const auto hit = image_bitmap(f, m);
  std::uint64_t n = 0;
  for (bool b : hit) n += b;
  return n;
}

ValueSetReport value_set_via_crt(const IntPolynomial& f, const FactoredModulus& m,
                                 std::uint64_t cap, std::uint64_t materialize_cap) {
  ValueSetReport report;
  report.modulus = m;
  report.factors = factor_value_sets(f, m, cap);

  // With m = 1 the empty product gives the single residue 0.
  std::uint64_t size = 1;
  for (const auto& fv : report.factors) size *= fv.size;
  report.size = size;
  report.is_surjective = size == m.value();
  if (size > materialize_cap) {
    report.materialized = false;
    return report;
  }

  std::vector<std::uint64_t> moduli;
  for (const auto& fv : report.factors) moduli.push_back(fv.modulus);
  const CrtBasis basis(std::move(moduli));

  const std::size_t k = report.factors.size();
  std::vector<std::size_t> index(k, 0);
  std::vector<Residue> tuple(k);
  report.values.reserve(size);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = report.factors[i].values[index[i]];
    report.values.push_back(basis.combine(tuple));
    std::size_t i = k;
    while (i > 0 && ++index[i - 1] == report.factors[i - 1].values.size()) {
      index[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(report.values.begin(), report.values.end());
  return report;
}

CarvedResidueSet carved_set(std::uint64_t p, unsigned r, Residue a0) {
  require_prime(p);
  if (r < 2) throw std::invalid_argument("carved set needs r >= 2");
  if (a0 >= p) throw std::invalid_argument("critical residue must lie in [0, p)");
  const std::uint64_t modulus = pow_u64(p, r);
  const std::uint64_t top = modulus / p;       // p^(r-1)
  const std::uint64_t l_count = top / p;       // p^(r-2)
  CarvedResidueSet out{p, r, a0, {}};
  out.members.reserve(l_count * (p - 1));
  for (std::uint64_t l = 0; l < l_count; ++l) {
    for (std::uint64_t k = 1; k < p; ++k) out.members.push_back(a0 + l * p + k * top);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

bool restricted_injectivity_check(const IntPolynomial& f, std::uint64_t p, unsigned r,
                                  Residue a0, std::uint64_t cap) {
  const auto carved = carved_set(p, r, a0);
  const std::uint64_t modulus = pow_u64(p, r);
  check_cap(modulus, cap);
  std::vector<bool> excluded(modulus, false);
  for (auto s : carved.members) excluded[s] = true;
  const ReducedPolynomial g(f, modulus);
  std::vector<bool> hit(modulus, false);
  for (Residue a = 0; a < modulus; ++a) {
    if (excluded[a]) continue;
    const Residue v = g(a);
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace resiring
