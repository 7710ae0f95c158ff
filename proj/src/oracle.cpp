#include "resiring/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "resiring/errors.hpp"

namespace resiring {

unsigned kempner(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  Residue fact = 1 % m;  // k! mod m
  unsigned k = 1;
  while (fact != 0) {
    ++k;
    fact = mul_mod(fact, k % m, m);
  }
  return k;
}

CanonicalFunctionEnumeration plan_enumeration(std::uint64_t m) {
  CanonicalFunctionEnumeration plan;
  plan.modulus = m;
  plan.kempner = kempner(m);
  plan.total = 1;
  Residue fact = 1 % m;
  for (unsigned k = 0; k < plan.kempner; ++k) {
    if (k > 0) fact = mul_mod(fact, k % m, m);
    // gcd(m, k!) = gcd(m, k! mod m), with gcd(m, 0) = m
    const std::uint64_t range = m / gcd_u64(m, fact);
    plan.ranges.push_back(range);
    plan.total *= mpz_class(range);
  }
  return plan;
}

std::vector<std::vector<Residue>> falling_factorial_tables(std::uint64_t m, unsigned count) {
  std::vector<std::vector<Residue>> tables(count, std::vector<Residue>(m, 0));
  for (std::uint64_t x = 0; x < m; ++x) {
    Residue value = 1 % m;
    for (unsigned k = 0; k < count; ++k) {
      tables[k][x] = value;
      value = mul_mod(value, (x + m - k % m) % m, m);
    }
  }
  return tables;
}

IntPolynomial from_falling_factorial(std::span<const std::uint64_t> coeffs) {
  std::vector<mpz_class> result(coeffs.empty() ? 0 : coeffs.size());
  std::vector<mpz_class> basis{1};  // F_k in the monomial basis
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (std::size_t j = 0; j < basis.size(); ++j) result[j] += basis[j] * mpz_class(coeffs[k]);
    // F_{k+1} = F_k * (X - k)
    std::vector<mpz_class> next(basis.size() + 1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      next[j + 1] += basis[j];
      next[j] -= basis[j] * static_cast<unsigned long>(k);
    }
    basis = std::move(next);
  }
  return IntPolynomial(std::move(result));
}

namespace {

using Table = std::vector<std::uint32_t>;

/// Digits assigned before the odometer takes over, and the orbit weight.
struct WorkItem {
  std::vector<std::uint64_t> prefix;
  std::uint64_t weight = 1;
};

class Walker {
 public:
  Walker(const CanonicalFunctionEnumeration& plan)
      : m_(plan.modulus), ranges_(plan.ranges) {
    if (m_ > std::numeric_limits<std::uint32_t>::max()) {
      throw CapExceeded("modulus too large for table enumeration");
    }
    for (auto& t : falling_factorial_tables(m_, plan.kempner)) {
      tables_.emplace_back(t.begin(), t.end());
    }
  }

  std::uint64_t modulus() const { return m_; }

  /// Calls visit(table, digits) for every completion of the prefix.
  template <class Visit>
  void run(const WorkItem& item, Visit&& visit) const {
    const std::size_t count = ranges_.size();
    std::vector<std::uint64_t> digits(count, 0);
    Table table(m_, 0);
    for (std::size_t k = 0; k < item.prefix.size(); ++k) {
      digits[k] = item.prefix[k];
      for (std::uint64_t x = 0; x < m_; ++x) {
        table[x] = static_cast<std::uint32_t>(
            add_mod(table[x], mul_mod(digits[k], tables_[k][x], m_), m_));
      }
    }
    const std::size_t first = item.prefix.size();
    if (first == count) {
      visit(table, digits);
      return;
    }
    const auto m32 = static_cast<std::uint32_t>(m_);
    for (;;) {
      visit(table, digits);
      std::size_t i = count;
      for (;;) {
        --i;
        // ranges_[i] * F_i ≡ 0 (mod m), so a wrapped digit leaves the table restored.
        const std::uint32_t* add = tables_[i].data();
        std::uint32_t* t = table.data();
        for (std::uint64_t x = 0; x < m_; ++x) {
          const std::uint32_t s = t[x] + add[x];
          t[x] = s >= m32 ? s - m32 : s;
        }
        if (++digits[i] < ranges_[i]) break;
        digits[i] = 0;
        if (i == first) return;
      }
    }
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> ranges_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

/// Distinct-value counter reusing one bitmap across tables.
class DistinctCounter {
 public:
  explicit DistinctCounter(std::uint64_t m) : m_(m) {
    if (m_ > 64) stamp_.assign(m_, 0);
  }

  std::uint64_t operator()(const Table& t) {
    if (m_ <= 64) {
      std::uint64_t mask = 0;
      for (auto v : t) mask |= std::uint64_t{1} << v;
      return static_cast<std::uint64_t>(std::popcount(mask));
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::uint64_t n = 0;
    for (auto v : t) {
      if (stamp_[v] != epoch_) {
        stamp_[v] = epoch_;
        ++n;
      }
    }
    return n;
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

std::uint64_t saturate(const mpz_class& z) {
  if (z > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()))) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return std::stoull(z.get_str());
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d <= m / d; ++d) {
    if (m % d != 0) continue;
    small.push_back(d);
    if (d != m / d) large.push_back(m / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// c_1 representatives in ascending order of c_1 (0 first), with weights.
std::vector<WorkItem> orbit_items(const CanonicalFunctionEnumeration& plan) {
  const std::uint64_t m = plan.modulus;
  std::vector<WorkItem> heads;
  for (auto d : divisors(m)) {
    const std::uint64_t c1 = d == m ? 0 : d;
    heads.push_back({{0, c1}, m * euler_phi(m / d)});
  }
  std::sort(heads.begin(), heads.end(),
            [](const WorkItem& a, const WorkItem& b) { return a.prefix[1] < b.prefix[1]; });
  if (plan.ranges.size() <= 2) return heads;
  // Split on c_2 as well so workers get balanced items.
  std::vector<WorkItem> items;
  for (const auto& h : heads) {
    for (std::uint64_t c2 = 0; c2 < plan.ranges[2]; ++c2) {
      items.push_back({{0, h.prefix[1], c2}, h.weight});
    }
  }
  return items;
}

std::vector<WorkItem> full_items(const CanonicalFunctionEnumeration& plan) {
  std::vector<WorkItem> items;
  for (std::uint64_t c0 = 0; c0 < plan.ranges[0]; ++c0) items.push_back({{c0}, 1});
  return items;
}

/// Runs per-item work on `threads` workers; `work(index, item)` must only
/// touch state owned by that index.
template <class Work>
void run_items(const std::vector<WorkItem>& items, const OracleOptions& options, Work&& work) {
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(items.size())));
  std::mutex progress_mutex;
  std::uint64_t done = 0;
  auto finish_one = [&] {
    if (!options.progress) return;
    std::lock_guard lock(progress_mutex);
    options.progress(++done, items.size());
  };
  if (threads == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      work(i, items[i]);
      finish_one();
    }
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < items.size(); i += threads) {
        work(i, items[i]);
        finish_one();
      }
    });
  }
}

void check_visit_cap(std::uint64_t visits, std::uint64_t cap, std::uint64_t m) {
  if (visits > cap) {
    throw CapExceeded("enumerating polynomial functions mod " + std::to_string(m) + " needs " +
                      std::to_string(visits) + " visits, above the cap of " +
                      std::to_string(cap));
  }
}

std::uint64_t visit_items(const CanonicalFunctionEnumeration& plan,
                          const std::vector<WorkItem>& items, const FunctionVisitor& visit,
                          const OracleOptions& options) {
  const Walker walker(plan);
  std::vector<std::uint64_t> counts(items.size(), 0);
  run_items(items, options, [&](std::size_t index, const WorkItem& item) {
    walker.run(item, [&](const Table& table, const std::vector<std::uint64_t>& digits) {
      visit(FunctionView{table, digits, item.weight});
      ++counts[index];
    });
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

bool all_functions_polynomial(const CanonicalFunctionEnumeration& plan) {
  mpz_class all;
  mpz_ui_pow_ui(all.get_mpz_t(), plan.modulus, plan.modulus);
  return plan.total == all;
}

/// Canonical coordinates of a table mod a prime p: c_k = (Δ^k t)(0) / k!.
std::vector<std::uint64_t> coordinates_mod_prime(std::vector<Residue> t, std::uint64_t p) {
  std::vector<std::uint64_t> coeffs;
  Residue fact = 1;
  for (std::uint64_t k = 0; k < p; ++k) {
    if (k > 0) fact = mul_mod(fact, k, p);
    coeffs.push_back(mul_mod(t[0], inverse_mod(fact, p), p));
    for (std::size_t x = 0; x + 1 < t.size(); ++x) t[x] = (t[x + 1] + p - t[x]) % p;
    t.pop_back();
  }
  return coeffs;
}

struct ItemSummary {
  std::vector<std::uint64_t> histogram;  // weighted
  std::uint64_t best = 0;
  Table best_table;
  std::vector<std::uint64_t> best_coeffs;
  std::uint64_t visited = 0;
};

std::vector<ItemSummary> summarize_orbits(const CanonicalFunctionEnumeration& plan,
                                          const OracleOptions& options) {
  const std::uint64_t m = plan.modulus;
  const auto items = orbit_items(plan);
  const Walker walker(plan);
  std::vector<ItemSummary> summaries(items.size());
  run_items(items, options, [&](std::size_t index, const WorkItem& item) {
    auto& s = summaries[index];
    s.histogram.assign(m + 1, 0);
    DistinctCounter distinct(m);
    walker.run(item, [&](const Table& table, const std::vector<std::uint64_t>& digits) {
      const std::uint64_t n = distinct(table);
      s.histogram[n] += item.weight;
      ++s.visited;
      if (n < m && n > s.best) {
        s.best = n;
        s.best_table = table;
        s.best_coeffs = digits;
      }
    });
  });
  return summaries;
}

}  // namespace

std::uint64_t orbit_representative_count(std::uint64_t m) {
  const auto plan = plan_enumeration(m);
  if (plan.ranges.size() < 2) return 1;
  mpz_class count = static_cast<unsigned long>(divisors(m).size());
  for (std::size_t k = 2; k < plan.ranges.size(); ++k) count *= mpz_class(plan.ranges[k]);
  return saturate(count);
}

std::uint64_t enumerate_functions(std::uint64_t m, const FunctionVisitor& visit,
                                  const OracleOptions& options) {
  const auto plan = plan_enumeration(m);
  check_visit_cap(saturate(plan.total), options.cap, m);
  return visit_items(plan, full_items(plan), visit, options);
}

std::uint64_t enumerate_orbit_representatives(std::uint64_t m, const FunctionVisitor& visit,
                                              const OracleOptions& options) {
  if (m < 2) return enumerate_functions(m, visit, options);
  const auto plan = plan_enumeration(m);
  check_visit_cap(orbit_representative_count(m), options.cap, m);
  return visit_items(plan, orbit_items(plan), visit, options);
}

namespace {

OracleStrategy choose_strategy(const CanonicalFunctionEnumeration& plan,
                               const OracleOptions& options) {
  const std::uint64_t visits = orbit_representative_count(plan.modulus);
  if (visits <= options.cap) return OracleStrategy::Enumeration;
  if (all_functions_polynomial(plan)) return OracleStrategy::AllFunctionsClosedForm;
  check_visit_cap(visits, options.cap, plan.modulus);
  return OracleStrategy::Enumeration;
}

}  // namespace

OracleMaximum oracle_big_m(std::uint64_t m, OracleOptions options) {
  if (m < 2) throw std::invalid_argument("M(m) needs m >= 2");
  const auto plan = plan_enumeration(m);
  OracleMaximum out;
  out.modulus = m;
  out.strategy = choose_strategy(plan, options);
  if (out.strategy == OracleStrategy::AllFunctionsClosedForm) {
    // Any map is polynomial, e.g. 0 -> 1, a -> a, with m - 1 values.
    out.big_m = m - 1;
    out.witness_table.resize(m);
    for (std::uint64_t a = 0; a < m; ++a) out.witness_table[a] = a == 0 ? 1 : a;
    out.witness_coeffs = coordinates_mod_prime(out.witness_table, m);
    return out;
  }
  for (auto& s : summarize_orbits(plan, options)) {
    out.visited += s.visited;
    if (s.best > out.big_m) {
      out.big_m = s.best;
      out.witness_table.assign(s.best_table.begin(), s.best_table.end());
      out.witness_coeffs = s.best_coeffs;
    }
  }
  return out;
}

ValueDistribution oracle_value_distribution(std::uint64_t m, OracleOptions options) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const auto plan = plan_enumeration(m);
  ValueDistribution out;
  out.modulus = m;
  out.total = plan.total;
  if (m == 1) {
    out.counts[1] = 1;
    out.visited = 1;
    return out;
  }
  out.strategy = choose_strategy(plan, options);
  if (out.strategy == OracleStrategy::AllFunctionsClosedForm) {
    // Maps onto exactly k values: C(m, k) * k! * S(m, k).
    std::vector<mpz_class> stirling(m + 1, 0);  // S(n, k) for the current n
    stirling[0] = 1;
    for (std::uint64_t n = 1; n <= m; ++n) {
      for (std::uint64_t k = n; k >= 1; --k) stirling[k] = stirling[k] * k + stirling[k - 1];
      stirling[0] = 0;
    }
    for (std::uint64_t k = 1; k <= m; ++k) {
      mpz_class choose, fact;
      mpz_bin_uiui(choose.get_mpz_t(), m, k);
      mpz_fac_ui(fact.get_mpz_t(), k);
      const mpz_class count = choose * fact * stirling[k];
      if (count != 0) out.counts[k] = count;
    }
    return out;
  }
  std::vector<mpz_class> merged(m + 1, 0);
  for (auto& s : summarize_orbits(plan, options)) {
    out.visited += s.visited;
    for (std::uint64_t n = 0; n <= m; ++n) merged[n] += mpz_class(s.histogram[n]);
  }
  for (std::uint64_t n = 0; n <= m; ++n) {
    if (merged[n] != 0) out.counts[n] = merged[n];
  }
  return out;
}

}  // namespace resiring
