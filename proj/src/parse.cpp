#include <cctype>
#include <string>

#include "resiring/errors.hpp"
#include "resiring/polynomial.hpp"

namespace resiring {

namespace {

// Dense storage makes the exponent a memory size.
constexpr std::size_t kMaxExponent = 1u << 20;

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  IntPolynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    parse_term(+1);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char op = text_[pos_];
      if (op != '+' && op != '-') fail(std::string("unexpected character '") + op + "'");
      ++pos_;
      parse_term(op == '+' ? +1 : -1);
    }
    return IntPolynomial(std::move(coeffs_));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool peek_var() const { return !at_end() && (text_[pos_] == 'x' || text_[pos_] == 'X'); }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_term(int outer_sign) {
    skip_ws();
    int sign = outer_sign;
    if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      if (text_[pos_] == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    mpz_class coeff = 1;
    std::size_t exponent = 0;
    if (peek_var()) {
      exponent = parse_var();
    } else {
      const std::string d = digits();
      if (d.empty()) fail("expected a term");
      coeff = mpz_class(d, 10);
      skip_ws();
      if (!at_end() && text_[pos_] == '*') {
        ++pos_;
        skip_ws();
        if (!peek_var()) fail("expected variable x after '*'");
        exponent = parse_var();
      }
    }
    if (sign < 0) coeff = -coeff;
    if (coeffs_.size() <= exponent) coeffs_.resize(exponent + 1);
    coeffs_[exponent] += coeff;
  }

  std::size_t parse_var() {
    ++pos_;  // x or X
    skip_ws();
    if (at_end() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_ws();
    if (!at_end() && text_[pos_] == '-') fail("exponent must be a nonnegative integer");
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.empty()) fail("exponent must be a nonnegative integer");
    if (d.size() > 7 || std::stoul(d) > kMaxExponent) {
      pos_ = start;
      fail("exponent exceeds " + std::to_string(kMaxExponent));
    }
    return std::stoul(d);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<mpz_class> coeffs_;
};

}  // namespace

IntPolynomial parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace resiring
