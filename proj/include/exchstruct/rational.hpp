#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace exchstruct {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", integer, and decimal forms ("3/10", "-2", "0.3").
Rational parse_rational(const std::string& text);

// "p/q" when q != 1, plain integer otherwise.
std::string rational_to_string(const Rational& r);

// Nearest exact rational for a finite double, via its shortest decimal
// representation, so parse_rational("0.3") and from_double(0.3) agree.
Rational rational_from_double(double x);

double to_double(const Rational& r);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

}  // namespace exchstruct
