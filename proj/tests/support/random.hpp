#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline pdiag::DenseMatrix<pdiag::Rational> int_matrix(Rng& rng, std::size_t n, long lo, long hi) {
  return pdiag::DenseMatrix<pdiag::Rational>::generate(
      n, [&](std::size_t, std::size_t) { return pdiag::Rational(uniform_int(rng, lo, hi)); });
}

inline pdiag::DenseMatrix<double> real_matrix(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  return pdiag::DenseMatrix<double>::generate(n, [&](std::size_t, std::size_t) { return uniform_real(rng, lo, hi); });
}

}  // namespace testgen
