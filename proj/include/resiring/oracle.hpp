#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "resiring/arith.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

/// Least k >= 1 with m | k!.
unsigned kempner(std::uint64_t m);

/**
 * Coordinates of the polynomial functions on Z/mZ in the falling-factorial
 * basis F_k(x) = x (x-1) ... (x-k+1): every function is
 * sum_{k < kempner} c_k F_k with a unique c_k in [0, ranges[k]),
 * ranges[k] = m / gcd(m, k!).
 */
struct CanonicalFunctionEnumeration {
  std::uint64_t modulus = 1;
  unsigned kempner = 1;
  std::vector<std::uint64_t> ranges;
  mpz_class total;  // product of ranges
};

CanonicalFunctionEnumeration plan_enumeration(std::uint64_t m);

/// F_k(x) mod m for k < count and x in [0, m).
std::vector<std::vector<Residue>> falling_factorial_tables(std::uint64_t m, unsigned count);

/// The integer polynomial sum_k c_k F_k(X) in the monomial basis.
IntPolynomial from_falling_factorial(std::span<const std::uint64_t> coeffs);

/// One visited polynomial function.
struct FunctionView {
  std::span<const std::uint32_t> table;   // f(0), ..., f(m-1)
  std::span<const std::uint64_t> coeffs;  // falling-factorial coordinates
  std::uint64_t weight = 1;               // number of functions it stands for
};

using FunctionVisitor = std::function<void(const FunctionView&)>;

struct OracleOptions {
  /// Maximum number of visited tables.
  std::uint64_t cap = 100'000'000;
  /// Worker count; the visitor must tolerate concurrent calls when > 1.
  unsigned threads = 1;
  /// Called after each finished work item with (done, total); may be empty.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Default visit cap for oracle_big_m / oracle_value_distribution, which
/// visit one representative per orbit of f -> u f + c.
inline constexpr std::uint64_t kDefaultOrbitCap = 200'000'000;

/**
 * Visits the value table of every polynomial function on Z/mZ exactly once,
 * in lexicographic order of the coordinates when single-threaded. Returns
 * the number of visits. Throws CapExceeded when the total exceeds the cap.
 */
std::uint64_t enumerate_functions(std::uint64_t m, const FunctionVisitor& visit,
                                  const OracleOptions& options = {});

/**
 * Visits one function per orbit under f -> u f + c (u a unit, c any
 * residue): c_0 = 0 and c_1 a divisor of m (c_1 = 0 for the divisor m).
 * Both maps preserve the value-set size and permutation status. The view's
 * weight is the orbit's share of all functions, m * phi(m / gcd(c_1, m)),
 * so weighted counts equal full-enumeration counts.
 */
std::uint64_t enumerate_orbit_representatives(std::uint64_t m, const FunctionVisitor& visit,
                                              const OracleOptions& options = {});

/// Number of tables enumerate_orbit_representatives would visit.
std::uint64_t orbit_representative_count(std::uint64_t m);

enum class OracleStrategy {
  /// Orbit-representative enumeration.
  Enumeration,
  /// Every map Z/mZ -> Z/mZ is polynomial (the canonical count is m^m), so
  /// the distribution follows from counting maps by image size.
  AllFunctionsClosedForm,
};

struct OracleMaximum {
  std::uint64_t modulus = 0;
  std::uint64_t big_m = 0;
  std::vector<Residue> witness_table;
  std::vector<std::uint64_t> witness_coeffs;  // falling-factorial coordinates
  OracleStrategy strategy = OracleStrategy::Enumeration;
  std::uint64_t visited = 0;
};

/// Largest value-set size over all non-permutation polynomial functions
/// mod m, with one attaining table. Throws std::invalid_argument for m < 2
/// and CapExceeded when infeasible.
OracleMaximum oracle_big_m(std::uint64_t m, OracleOptions options = {kDefaultOrbitCap});

struct ValueDistribution {
  std::uint64_t modulus = 0;
  std::map<std::uint64_t, mpz_class> counts;  // N -> number of functions
  mpz_class total;
  OracleStrategy strategy = OracleStrategy::Enumeration;
  std::uint64_t visited = 0;
};

/// Number of polynomial functions mod m for each value-set size N.
ValueDistribution oracle_value_distribution(std::uint64_t m,
                                            OracleOptions options = {kDefaultOrbitCap});

}  // namespace resiring
