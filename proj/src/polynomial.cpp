#include "resiring/polynomial.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace resiring {

namespace {

void trim_trailing_zeros(std::vector<mpz_class>& coeffs) {
  while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

std::uint64_t to_u64(const mpz_class& z) {
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim_trailing_zeros(coeffs_);
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim_trailing_zeros(coeffs_);
}

IntPolynomial IntPolynomial::monomial(const mpz_class& coeff, std::size_t exponent) {
  std::vector<mpz_class> c(exponent + 1);
  c[exponent] = coeff;
  return IntPolynomial(std::move(c));
}

mpz_class IntPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class IntPolynomial::operator()(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::string render(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    const mpz_class& c = f.coeffs()[k];
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const mpz_class magnitude = abs(c);
    if (k == 0) {
      out << magnitude.get_str();
      continue;
    }
    if (magnitude != 1) out << magnitude.get_str() << '*';
    out << 'x';
    if (k >= 2) out << '^' << k;
  }
  return out.str();
}

Residue eval_mod(const IntPolynomial& f, const mpz_class& a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const mpz_class mz = to_mpz(m);
  mpz_class value = f(a);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), mz.get_mpz_t());
  return to_u64(r);
}

ReducedPolynomial::ReducedPolynomial(const IntPolynomial& f, std::uint64_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const mpz_class mz = to_mpz(m);
  coeffs_.reserve(f.coeffs().size());
  mpz_class r;
  for (const auto& c : f.coeffs()) {
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mz.get_mpz_t());
    coeffs_.push_back(to_u64(r));
  }
}

IntPolynomial derivative(const IntPolynomial& f) {
  const auto& a = f.coeffs();
  if (a.size() <= 1) return {};
  std::vector<mpz_class> out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial hasse_derivative(const IntPolynomial& f, std::size_t i) {
  const auto& a = f.coeffs();
  if (i >= a.size()) return {};
  std::vector<mpz_class> out(a.size() - i);
  mpz_class binom;
  for (std::size_t j = i; j < a.size(); ++j) {
    mpz_bin_uiui(binom.get_mpz_t(), j, i);
    out[j - i] = binom * a[j];
  }
  return IntPolynomial(std::move(out));
}

PAdicValuation ord_p(const mpz_class& n, std::uint64_t p) {
  require_prime(p);
  return detail::ord_p_unchecked(n, p);
}

namespace detail {

PAdicValuation ord_p_unchecked(const mpz_class& n, std::uint64_t p) {
  if (sgn(n) == 0) return PAdicValuation::infinity();
  const mpz_class pz = to_mpz(p);
  mpz_class rest = n;
  const auto v = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
  return PAdicValuation::finite(static_cast<unsigned>(v));
}

}  // namespace detail

}  // namespace resiring
