#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tfg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KindMismatch : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};

Rational ratio(const BigInt& p, const BigInt& q);

// Always "p/q" in lowest terms, denominator positive.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

// Accepts "p/q" or a bare integer "p". Anything else (decimals, spaces) throws InvalidInput.
Rational parse_rational(std::string_view text);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

// Natural log, display only.
double log_of(const BigInt& n);
double log_of(const Rational& r);
double to_double(const Rational& r);

// Smallest n >= 1 with base^n < target (strict) or base^n <= target.
// Requires 0 < base < 1 and 0 < target < 1.
unsigned min_power_below(const Rational& base, const Rational& target, bool strict);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

}  // namespace tfg
