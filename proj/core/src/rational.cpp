#include "fracperc/rational.hpp"

#include <cmath>
#include <gmp.h>

#include "fracperc/errors.hpp"

namespace fracperc {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos) {
        throw InputError("unsupported rational literal: " + s);
      }
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw InputError("bad decimal: " + s);
      if (digits[0] == '+') digits.erase(0, 1);
      BigInt num(digits, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational r(s, 10);
    if (r.get_den() == 0) throw InputError("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("not a rational number: " + std::string(text));
  }
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r{BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))};
  r.canonicalize();
  return r;
}

double log_big(const BigInt& value) { return static_cast<double>(log_big_long(value)); }

long double log_big_long(const BigInt& value) {
  if (sgn(value) <= 0) return -HUGE_VALL;
  long exp = 0;
  const long double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(mant) + static_cast<long double>(exp) * std::log(2.0L);
}

double to_double(const Rational& value) {
  // get_d truncates toward zero; pick the nearer of it and the next double outward.
  const double d = value.get_d();
  if (!std::isfinite(d)) return d;
  const double outward = std::nextafter(d, sgn(value) >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(outward)) return d;
  const Rational lo_gap = abs(value - Rational(d));
  const Rational hi_gap = abs(Rational(outward) - value);
  return hi_gap < lo_gap ? outward : d;
}

}  // namespace fracperc
