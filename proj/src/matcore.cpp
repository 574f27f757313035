#include "pdiag/matcore.hpp"

#include <utility>

namespace pdiag::matcore {

std::vector<Vector<Rational>> kernel_basis(const DenseMatrix<Rational>& a) {
  const std::size_t n = a.size();
  std::vector<Rational> m = a.entries();
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return m[i * n + j]; };

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && at(p, col) == 0) ++p;
    if (p == n) continue;
    if (p != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(at(p, j), at(row, j));
    const Rational inv = 1 / at(row, col);
    for (std::size_t j = col; j < n; ++j) at(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || at(i, col) == 0) continue;
      const Rational f = at(i, col);
      for (std::size_t j = col; j < n; ++j) at(i, j) -= f * at(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<Vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

DenseMatrix<double> to_double(const DenseMatrix<Rational>& a) {
  return DenseMatrix<double>::generate(a.size(), [&](std::size_t i, std::size_t j) { return pdiag::to_double(a(i, j)); });
}

DenseMatrix<Complexd> to_complex(const DenseMatrix<Rational>& a) {
  return DenseMatrix<Complexd>::generate(a.size(),
                                         [&](std::size_t i, std::size_t j) { return Complexd(pdiag::to_double(a(i, j)), 0.0); });
}

DenseMatrix<Complexd> to_complex(const DenseMatrix<double>& a) {
  return DenseMatrix<Complexd>::generate(a.size(), [&](std::size_t i, std::size_t j) { return Complexd(a(i, j), 0.0); });
}

DenseMatrix<Rational> to_rational(const DenseMatrix<double>& a) {
  return DenseMatrix<Rational>::generate(a.size(),
                                         [&](std::size_t i, std::size_t j) { return rational_from_double(a(i, j)); });
}

}  // namespace pdiag::matcore
