#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <type_traits>

namespace pdiag {

using Rational = mpq_class;
using Complexd = std::complex<double>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<T, Complexd>;

template <class T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double> ||
                 std::is_same_v<T, Complexd>;

/// Complex number with exact rational parts. Used for spectra handed to the
/// nonnegative constructions, where x +/- iy must stay exact.
/// Nearest double, ties to even. mpq's own conversion truncates.
double to_double(const Rational& x);

struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  ExactComplex conj() const { return {re, -im}; }
  Rational norm2() const { return Rational(re * re + im * im); }
  Complexd to_complex() const { return {pdiag::to_double(re), pdiag::to_double(im)}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
};

inline Complexd to_complex(const Rational& x) { return {to_double(x), 0.0}; }
inline Complexd to_complex(double x) { return {x, 0.0}; }
inline Complexd to_complex(const Complexd& x) { return x; }

inline double magnitude(const Rational& x) { return std::fabs(to_double(x)); }
inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const Complexd& x) { return std::abs(x); }

/// Zero test: exact for rationals, |x| <= tol for floating types.
inline bool is_zero(const Rational& x, double = 0.0) { return sgn(x) == 0; }
inline bool is_zero(double x, double tol = 0.0) { return std::fabs(x) <= tol; }
inline bool is_zero(const Complexd& x, double tol = 0.0) { return std::abs(x) <= tol; }

template <Scalar T>
T scalar_from_int(long v) {
  if constexpr (std::is_same_v<T, Complexd>) {
    return Complexd(static_cast<double>(v), 0.0);
  } else {
    return T(v);
  }
}

/// Parses "p/q", an integer, or a decimal literal ("-1.25", "3e-2") into an
/// exact rational. Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Exact binary value of a finite double.
Rational rational_from_double(double x);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& x);

}  // namespace pdiag
