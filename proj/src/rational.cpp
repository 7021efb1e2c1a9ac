#include "tfg/rational.hpp"

#include <cmath>
#include <regex>

namespace tfg {

Rational ratio(const BigInt& p, const BigInt& q) {
  if (q == 0) throw InvalidInput("zero denominator");
  return Rational(p, q);
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex re(R"(^([+-]?[0-9]+)(?:/([0-9]+))?$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InvalidInput("not an exact rational: '" + s + "'");
  BigInt p(m[1].str());
  BigInt q = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (q == 0) throw InvalidInput("zero denominator: '" + s + "'");
  return Rational(p, q);
}

BigInt floor_of(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

BigInt pow(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(pow(BigInt(numerator(base)), exponent), pow(BigInt(denominator(base)), exponent));
}

double log_of(const BigInt& n) {
  if (n <= 0) throw InvalidInput("log of non-positive integer");
  auto bits = boost::multiprecision::msb(n);
  if (bits < 1000) return std::log(n.convert_to<double>());
  unsigned shift = static_cast<unsigned>(bits) - 60;
  BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double log_of(const Rational& r) { return log_of(BigInt(numerator(r))) - log_of(BigInt(denominator(r))); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

unsigned min_power_below(const Rational& base, const Rational& target, bool strict) {
  if (base <= 0 || base >= 1 || target <= 0 || target >= 1)
    throw InvalidInput("min_power_below needs base and target in (0,1)");
  auto ok = [&](unsigned n) {
    Rational v = pow(base, n);
    return strict ? v < target : v <= target;
  };
  double guess = std::ceil(log_of(target) / log_of(base));
  unsigned n = guess < 1 ? 1u : static_cast<unsigned>(guess);
  while (n > 1 && ok(n - 1)) --n;
  while (!ok(n)) ++n;
  return n;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace tfg
