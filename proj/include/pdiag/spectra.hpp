#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pdiag/matcore.hpp"
#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

// Independent eigenvalue engine. Everything here works in double / complex
// double except the exact characteristic-polynomial route for rational input.
namespace pdiag::spectra {

struct SpectrumEstimate {
  std::vector<Complexd> values;
  // Largest deflated subdiagonal relative to ||H||, or the polynomial root
  // residual for the characteristic-polynomial routes.
  double residual = 0.0;
};

enum class Side { right, left };

struct EigenPair {
  Complexd value;
  std::vector<Complexd> vector;
  Side side = Side::right;
  // ||A v - value v||_inf (right) or ||t^T A - value t^T||_inf (left),
  // measured after normalization.
  double residual = 0.0;
};

enum class Normalization {
  max_entry,  // entry of largest modulus equals 1
  unit_sum,   // entries sum to 1 (t^T e = 1)
};

/// Balance, reduce to Hessenberg form and run shifted complex QR. Real input
/// gets its conjugate pairs symmetrized. Throws ConvergenceError after 100*n
/// sweeps.
SpectrumEstimate eigenvalues(const DenseMatrix<double>& a, double tol = 1e-12);
SpectrumEstimate eigenvalues(const DenseMatrix<Complexd>& a, double tol = 1e-12);

/// Exact characteristic polynomial, square-free factorization over Q, then
/// simultaneous root iteration on each factor. Multiplicities come from the
/// factorization, so defective eigenvalues are located as accurately as
/// simple ones.
SpectrumEstimate eigenvalues_exact(const DenseMatrix<Rational>& a);

/// Spectrum by the route suited to the backend: exact characteristic
/// polynomial for rational matrices up to n = 24, QR otherwise.
SpectrumEstimate spectrum_of(const DenseMatrix<Rational>& a);
SpectrumEstimate spectrum_of(const DenseMatrix<double>& a);
SpectrumEstimate spectrum_of(const DenseMatrix<Complexd>& a);

/// Cross-check route for small n: Faddeev-LeVerrier in floating point plus
/// Durand-Kerner.
SpectrumEstimate eigenvalues_via_charpoly(const DenseMatrix<double>& a);

/// Coefficients of det(tI - A), lowest degree first; the last entry is 1.
/// Faddeev-LeVerrier recurrence, exact on the rational backend.
template <Scalar T>
std::vector<T> characteristic_polynomial(const DenseMatrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> c(n + 1, scalar_from_int<T>(0));
  c[n] = scalar_from_int<T>(1);
  DenseMatrix<T> m = DenseMatrix<T>::zeros(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const DenseMatrix<T> am = matcore::multiply(a, m);
    m = DenseMatrix<T>::generate(n, [&](std::size_t i, std::size_t j) {
      return i == j ? T(am(i, j) + c[n - k + 1]) : am(i, j);
    });
    const T tr = matcore::trace(matcore::multiply(a, m));
    if constexpr (is_exact_v<T>) {
      c[n - k] = -tr / Rational(static_cast<long>(k));
    } else {
      c[n - k] = -tr / static_cast<double>(k);
    }
  }
  return c;
}

/// Roots of sum_i coeffs[i] t^i (leading coefficient nonzero) by
/// Durand-Kerner iteration followed by a Newton polish.
std::vector<Complexd> polynomial_roots(std::span<const Complexd> coeffs);

/// Pairs every eigenvalue with |Im| above a relative threshold with its
/// nearest conjugate partner and replaces both by the averaged pair. Unpaired
/// near-real values are snapped to the real axis.
std::vector<Complexd> symmetrize_conjugates(std::vector<Complexd> values);

struct Matching {
  double max_distance = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool complete = true;  // sizes agreed
};

/// Greedy minimal-distance bipartite matching of two multisets.
Matching match_multisets(std::span<const Complexd> a, std::span<const Complexd> b);

/// Inverse iteration on (A - lambda I). For a matrix with constant row sums
/// alpha and lambda == alpha (to tol) the all-ones vector is returned as is.
/// `avoid` holds previously found vectors for the same eigenvalue; the
/// iterate is kept orthogonal to them. Throws DomainError when the residual
/// bound tol * max(1, ||A||) cannot be met.
EigenPair right_eigenvector(const DenseMatrix<Complexd>& a, Complexd lambda, double tol = 1e-9,
                            Normalization norm = Normalization::max_entry,
                            std::span<const std::vector<Complexd>> avoid = {});
EigenPair right_eigenvector(const DenseMatrix<double>& a, Complexd lambda, double tol = 1e-9,
                            Normalization norm = Normalization::max_entry);

EigenPair left_eigenvector(const DenseMatrix<Complexd>& a, Complexd lambda, double tol = 1e-9,
                           Normalization norm = Normalization::unit_sum);
EigenPair left_eigenvector(const DenseMatrix<double>& a, Complexd lambda, double tol = 1e-9,
                           Normalization norm = Normalization::unit_sum);

/// Left eigenvector t of A for the exact eigenvalue c, scaled so t^T e = 1.
/// Throws DomainError if c is not an eigenvalue or every left eigenvector is
/// orthogonal to e.
std::vector<Rational> left_eigenvector_exact(const DenseMatrix<Rational>& a, const Rational& c);

/// Right eigenpairs in scan order: eigenvalues by decreasing modulus (real
/// before nonreal on ties), one vector per unit of geometric multiplicity
/// found by inverse iteration. Pairs that miss the residual bound are dropped.
std::vector<EigenPair> eigenpairs(const DenseMatrix<Complexd>& a, double tol = 1e-8);

/// First eigenpair in scan order whose vector has min|x_i| > zero_tol * max|x_i|.
/// Throws DomainError for a scalar matrix.
std::optional<EigenPair> all_nonzero_eigenvector(const DenseMatrix<Complexd>& a, double zero_tol = 1e-8);
std::optional<EigenPair> all_nonzero_eigenvector(const DenseMatrix<double>& a, double zero_tol = 1e-8);

bool has_all_nonzero_entries(std::span<const Complexd> x, double zero_tol);

}  // namespace pdiag::spectra
