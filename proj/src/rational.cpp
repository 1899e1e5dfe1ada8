#include "exchstruct/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace exchstruct {

namespace {

// BigInt's string constructor treats a leading 0 as an octal prefix; strip
// redundant zeros so "025" parses as decimal 25.
BigInt parse_decimal(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  size_t first = s.find_first_not_of('0');
  s = first == std::string::npos ? "0" : s.substr(first);
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad integer literal");
  BigInt v(s);
  return neg ? -v : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_decimal(text.substr(0, slash));
    BigInt den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(num, den);
  }
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    Rational mantissa = parse_rational(text.substr(0, epos));
    long e = std::stol(text.substr(epos + 1));
    BigInt pow10 = 1;
    for (long i = 0; i < std::labs(e); ++i) pow10 *= 10;
    return e >= 0 ? mantissa * pow10 : mantissa / Rational(pow10);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0) return Rational(parse_decimal(text.substr(0, dot)));
  BigInt num = parse_decimal(digits);
  BigInt den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return parse_rational(std::string(buf, res.ptr));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace exchstruct
