#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdiag/error.hpp"
#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

// Structural operations shared by every construction. All functions are pure.
namespace pdiag::matcore {

namespace detail {

inline void require_length(std::size_t n, std::size_t len, const char* what) {
  if (len != n) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(len) +
                         ", matrix dimension is " + std::to_string(n));
  }
}

}  // namespace detail

template <Scalar T>
Vector<T> ones(std::size_t n) {
  return Vector<T>(n, scalar_from_int<T>(1));
}

template <Scalar T>
T trace(const DenseMatrix<T>& a) {
  T s = scalar_from_int<T>(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a(i, i);
  return s;
}

template <Scalar T>
Vector<T> diagonal(const DenseMatrix<T>& a) {
  Vector<T> d;
  d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a(i, i));
  return d;
}

template <Scalar T>
double max_abs_entry(const DenseMatrix<T>& a) {
  double m = 0.0;
  for (const T& x : a.entries()) m = std::max(m, magnitude(x));
  return m;
}

/// Infinity norm (max absolute row sum).
template <Scalar T>
double norm_inf(const DenseMatrix<T>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (const T& x : a.row(i)) s += magnitude(x);
    m = std::max(m, s);
  }
  return m;
}

template <Scalar T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) { return a(j, i); });
}

template <Scalar T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.size() != b.size()) throw DimensionError("multiply: dimension mismatch");
  const std::size_t n = a.size();
  std::vector<T> out(n * n, scalar_from_int<T>(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a(i, k) * b(k, j);
    }
  return DenseMatrix<T>(n, std::move(out));
}

template <Scalar T>
Vector<T> apply(const DenseMatrix<T>& a, std::span<const T> x) {
  detail::require_length(a.size(), x.size(), "vector");
  Vector<T> y(a.size(), scalar_from_int<T>(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// A - s*I
template <Scalar T>
DenseMatrix<T> shift(const DenseMatrix<T>& a, const T& s) {
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) {
    return i == j ? T(a(i, j) - s) : a(i, j);
  });
}

/// A + v q^T. Input matrix is untouched.
template <Scalar T>
DenseMatrix<T> rank_one_add(const DenseMatrix<T>& a, std::span<const T> v, std::span<const T> q) {
  detail::require_length(a.size(), v.size(), "v");
  detail::require_length(a.size(), q.size(), "q");
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) {
    return T(a(i, j) + v[i] * q[j]);
  });
}

/// D^{-1} A D with D = diag(d). Entries of d must be nonzero; on floating
/// backends an entry is treated as zero when |d_i| <= rel_threshold * max|d|.
template <Scalar T>
DenseMatrix<T> diag_similarity(const DenseMatrix<T>& a, std::span<const T> d,
                               double rel_threshold = 1e-10) {
  detail::require_length(a.size(), d.size(), "scaling vector");
  double dmax = 0.0;
  for (const T& x : d) dmax = std::max(dmax, magnitude(x));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool zero = is_exact_v<T> ? is_zero(d[i]) : magnitude(d[i]) <= rel_threshold * dmax;
    if (zero) throw DomainError("diag_similarity: scale entry " + std::to_string(i) + " is zero");
  }
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) {
    if (i == j) return a(i, j);
    return T(a(i, j) * d[j] / d[i]);
  });
}

/// P^T A P where P maps e_i -> e_{perm[i]}: result(i, j) = A(perm[i], perm[j]),
/// so the new i-th diagonal entry is the old entry perm[i].
template <Scalar T>
DenseMatrix<T> permute_similarity(const DenseMatrix<T>& a, const Permutation& perm) {
  if (perm.size() != a.size()) throw DimensionError("permutation size does not match matrix");
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) { return a(perm[i], perm[j]); });
}

template <Scalar T>
Vector<T> row_sums(const DenseMatrix<T>& a) {
  Vector<T> s(a.size(), scalar_from_int<T>(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const T& x : a.row(i)) s[i] += x;
  return s;
}

/// Common row sum alpha when every row sum is within tol of the first
/// (exact comparison on the rational backend, tol ignored).
template <Scalar T>
std::optional<T> constant_row_sum(const DenseMatrix<T>& a, double tol = 0.0) {
  const Vector<T> s = row_sums(a);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!is_zero(T(s[i] - s[0]), tol)) return std::nullopt;
  }
  if constexpr (is_exact_v<T>) {
    return s[0];
  } else {
    T mean = scalar_from_int<T>(0);
    for (const T& x : s) mean += x;
    return mean / static_cast<double>(s.size());
  }
}

template <Scalar T>
bool is_diagonal(const DenseMatrix<T>& a, double tol = 0.0) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && !is_zero(a(i, j), tol)) return false;
  return true;
}

/// True when A = a_00 * I.
template <Scalar T>
bool is_scalar_matrix(const DenseMatrix<T>& a, double tol = 0.0) {
  if (!is_diagonal(a, tol)) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!is_zero(T(a(i, i) - a(0, 0)), tol)) return false;
  return true;
}

/// Basis of the right null space via exact reduced row echelon form.
/// Rational backend only.
std::vector<Vector<Rational>> kernel_basis(const DenseMatrix<Rational>& a);

DenseMatrix<double> to_double(const DenseMatrix<Rational>& a);
DenseMatrix<Complexd> to_complex(const DenseMatrix<Rational>& a);
DenseMatrix<Complexd> to_complex(const DenseMatrix<double>& a);
inline DenseMatrix<Complexd> to_complex(const DenseMatrix<Complexd>& a) { return a; }

/// Exact binary values of every entry.
DenseMatrix<Rational> to_rational(const DenseMatrix<double>& a);

}  // namespace pdiag::matcore
