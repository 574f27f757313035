#pragma once

#include <span>
#include <vector>

#include "pdiag/matcore.hpp"
#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"
#include "pdiag/spectra.hpp"

// Similarity transforms that move an arbitrary non-scalar matrix to one with
// any prescribed diagonal of the same trace.
namespace pdiag::fillmore {

enum class TargetMode { general, nonnegative };

template <Scalar T>
struct DiagonalTarget {
  std::vector<T> gammas;
  TargetMode mode = TargetMode::general;
};

/// Length must match n; nonnegative mode requires real entries >= 0.
template <Scalar T>
void validate(const DiagonalTarget<T>& target, std::size_t n) {
  matcore::detail::require_length(n, target.gammas.size(), "diagonal target");
  if (target.mode != TargetMode::nonnegative) return;
  for (const T& g : target.gammas) {
    bool ok;
    if constexpr (is_complex_v<T>) {
      ok = g.imag() == 0.0 && g.real() >= 0.0;
    } else {
      ok = g >= 0;
    }
    if (!ok) throw DomainError("nonnegative diagonal target has a negative or nonreal entry");
  }
}

enum class StepKind {
  s_conjugation,     // A <- S^{-1} A S, S = I + sum_{i in rows} e_i e_pivot^T
  diagonal_scaling,  // A <- D^{-1} A D, D = diag(values)
  set_diagonal,      // A <- A + e q^T, q_i = values_i - a_ii
};

template <Scalar T>
struct SimilarityStep {
  StepKind kind;
  std::size_t pivot = 0;
  std::vector<std::size_t> rows;
  std::vector<T> values;
  std::vector<T> q;  // set_diagonal only: the applied update, for reporting
};

template <Scalar T>
struct SimilarityTrace {
  std::vector<SimilarityStep<T>> steps;

  /// Re-applies every step to `a`. Bit-identical to the recorded output.
  DenseMatrix<T> replay(const DenseMatrix<T>& a) const;
};

template <Scalar T>
struct SimilarResult {
  DenseMatrix<T> matrix;
  SimilarityTrace<T> trace;
};

struct Options {
  double trace_tol = 1e-10;  // |sum gamma - tr A| relative to max(1, ||A||)
  double zero_tol = 1e-8;    // eigenvector entry counts as zero below this * max entry
  double cs_tol = 1e-8;      // row-sum constancy, relative to max(1, ||A||)
  bool certify = true;       // compare spectra of input and output before returning
  double certify_tol = 1e-6;
};

/// S^{-1} A S with S = I + sum_{i in rows} e_i e_pivot^T. Row i of the
/// result (i in rows) is row i minus row pivot of A S; column pivot of A S is
/// column pivot plus the listed columns.
template <Scalar T>
DenseMatrix<T> s_conjugation(const DenseMatrix<T>& a, std::size_t pivot, std::span<const std::size_t> rows);

/// B = A + e q^T with q_i = gamma_i - a_ii. A must have constant row sums and
/// sum(gamma) must equal tr A (exactly, or to options.trace_tol). diag(B) is
/// set to gamma exactly on every backend.
template <Scalar T>
DenseMatrix<T> set_diagonal_cs(const DenseMatrix<T>& a, std::span<const T> gammas, const Options& options = {});

/// A matrix similar to `a` with diagonal `target`. Scans eigenvectors for one
/// without zero entries and scales by it; otherwise conjugates by an S that
/// fills the zero entries of some eigenvector first. Diagonal input uses the
/// standard basis vectors, pivoting on a simple eigenvalue when one exists.
///
/// Backends: rational input only looks for rational eigenvectors (all-ones,
/// standard basis, or kernels at candidate rational eigenvalues); double input
/// only uses real eigenpairs; complex input uses all of them.
SimilarResult<Rational> similar_with_diagonal(const DenseMatrix<Rational>& a, const DiagonalTarget<Rational>& target,
                                              const Options& options = {});
SimilarResult<double> similar_with_diagonal(const DenseMatrix<double>& a, const DiagonalTarget<double>& target,
                                            const Options& options = {});
SimilarResult<Complexd> similar_with_diagonal(const DenseMatrix<Complexd>& a, const DiagonalTarget<Complexd>& target,
                                              const Options& options = {});

/// S^{-1} A S + e q^T with the leading-row S and q_i = gamma_i - (S^{-1} A S)_ii,
/// no diagonal scaling in between. For diagonal A this does not preserve the
/// spectrum in general; it exists only so tests can pin that behaviour.
DenseMatrix<Rational> unscaled_s_update(const DenseMatrix<Rational>& a, std::span<const Rational> gammas);

/// A + v q^T for a certified right eigenpair (value, v): the eigenvalue value
/// moves to value + v^T q, the rest stay. Rejects v whose residual exceeds
/// tol * max(1, ||A||).
DenseMatrix<Complexd> brauer_shift(const DenseMatrix<Complexd>& a, const spectra::EigenPair& v,
                                   std::span<const Complexd> q, double tol = 1e-8);
/// Exact variant: requires A v = lambda v exactly.
DenseMatrix<Rational> brauer_shift(const DenseMatrix<Rational>& a, const Rational& lambda, std::span<const Rational> v,
                                   std::span<const Rational> q);

}  // namespace pdiag::fillmore
