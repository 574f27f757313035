#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

// Reference instances with known exact answers.
namespace fixtures {

using pdiag::DenseMatrix;
using pdiag::Rational;

inline Rational q(long p, long d = 1) {
  Rational r{mpz_class(p), mpz_class(d)};
  r.canonicalize();
  return r;
}

inline DenseMatrix<Rational> rm(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return DenseMatrix<Rational>::from_rows(r);
}

/// 5x5 integer matrix with no constant row sums but a real eigenvector with
/// all entries nonzero (eigenvalue ~ 9.9179).
inline DenseMatrix<Rational> integer_5x5() {
  return DenseMatrix<Rational>::from_rows({{4, 0, 4, -3, 5},
                                           {2, 3, 0, 2, 3},
                                           {0, -2, 2, 5, 4},
                                           {7, 1, 3, 4, 0},
                                           {2, 5, 3, 0, -2}});
}

/// Rational approximation of that eigenvector, last entry scaled to 1.
inline std::vector<Rational> integer_5x5_eigenvector() {
  return {q(497, 601), q(1259, 1033), q(335, 241), q(1698, 899), q(1)};
}

inline std::vector<Rational> integer_5x5_target_diagonal() { return {3, 5, -2, 6, -1}; }

/// Spectrum {16, -1, -2, -2+-2i, -2+-3i} as (re, im) pairs.
inline std::vector<std::pair<long, long>> mixed_spectrum_7() {
  return {{16, 0}, {-1, 0}, {-2, 0}, {-2, 2}, {-2, -2}, {-2, 3}, {-2, -3}};
}

inline std::vector<Rational> mixed_diagonal_7() { return {0, 1, 2, 0, 2, 0, 0}; }

/// Suleimanova block before the diagonal update.
inline DenseMatrix<Rational> f_block_template_5x5() {
  return DenseMatrix<Rational>::from_rows({{16, 0, 0, 0, 0},
                                           {17, -1, 0, 0, 0},
                                           {18, 0, -2, 0, 0},
                                           {20, 0, 0, -2, -2},
                                           {16, 0, 0, 2, -2}});
}

/// Suleimanova block with diagonal (0, 1, 2, 0, 6).
inline DenseMatrix<Rational> f_block_5x5() {
  return DenseMatrix<Rational>::from_rows({{0, 2, 4, 2, 8},
                                           {1, 1, 4, 2, 8},
                                           {2, 2, 2, 2, 8},
                                           {4, 2, 4, 0, 6},
                                           {0, 2, 4, 4, 6}});
}

/// 3x3 block for {6, -2+-3i} with diagonal (2, 0, 0).
inline DenseMatrix<Rational> g_block_3x3() {
  return DenseMatrix<Rational>::from_rows({{2, 0, 4}, {q(25, 6), 0, q(11, 6)}, {0, 6, 0}});
}

/// The two blocks above glued through c = 6.
inline DenseMatrix<Rational> glued_7x7() {
  const Rational a = q(200, 73), b = q(192, 73), c = q(150, 73), d = q(144, 73);
  return DenseMatrix<Rational>::from_rows({{0, 2, 4, 2, a, b, b},
                                           {1, 1, 4, 2, a, b, b},
                                           {2, 2, 2, 2, a, b, b},
                                           {4, 2, 4, 0, c, d, d},
                                           {0, 2, 4, 4, 2, 0, 4},
                                           {0, 2, 4, 4, q(25, 6), 0, q(11, 6)},
                                           {0, 2, 4, 4, 0, 6, 0}});
}

/// Monic polynomial with the given roots, lowest degree first. The roots must
/// be closed under conjugation so that the coefficients are real.
inline std::vector<Rational> poly_from_roots(const std::vector<pdiag::ExactComplex>& roots) {
  std::vector<pdiag::ExactComplex> c{pdiag::ExactComplex(Rational(1))};
  for (const auto& r : roots) {
    std::vector<pdiag::ExactComplex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = next[i + 1] + c[i];
      next[i] = next[i] - r * c[i];
    }
    c = std::move(next);
  }
  std::vector<Rational> out;
  for (const auto& z : c) {
    if (z.im != 0) throw std::logic_error("roots not closed under conjugation");
    out.push_back(z.re);
  }
  return out;
}

inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<pdiag::ExactComplex> mixed_7_values() {
  std::vector<pdiag::ExactComplex> out;
  for (auto [re, im] : mixed_spectrum_7()) out.emplace_back(Rational(re), Rational(im));
  return out;
}

}  // namespace fixtures
