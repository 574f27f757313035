#include "pdiag/scalar.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>

#include "pdiag/error.hpp"

namespace pdiag {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw ParseError("not a number: '" + std::string(whole) + "'");
  mpz_class z(std::string(text.front() == '+' ? text.substr(1) : text), 10);
  return Rational(z);
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_part = s.substr(epos + 1);
    s = s.substr(0, epos);
    std::string_view exp_digits = exp_part;
    if (!exp_digits.empty() && (exp_digits.front() == '-' || exp_digits.front() == '+'))
      exp_digits.remove_prefix(1);
    if (!all_digits(exp_digits) || exp_digits.size() > 6)
      throw ParseError("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
  }
  std::string mantissa;
  long frac_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw ParseError("not a number: '" + std::string(text) + "'");
    mantissa = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("not a number: '" + std::string(text) + "'");
    mantissa = std::string(s);
  }
  Rational value(mpz_class(mantissa, 10));
  value *= pow10(exponent - frac_digits);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash), text);
    Rational den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return parse_integer(text, text);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite value cannot be represented exactly");
  return Rational(x);
}

double to_double(const Rational& x) {
  const double d = x.get_d();
  if (!std::isfinite(d) || Rational(d) == x) return d;
  const double away = std::nextafter(d, sgn(x) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return d;
  const Rational near_gap = abs(x - Rational(d));
  const Rational far_gap = abs(Rational(away) - x);
  if (far_gap != near_gap) return far_gap < near_gap ? away : d;
  return (std::bit_cast<std::uint64_t>(d) & 1U) ? away : d;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

}  // namespace pdiag
