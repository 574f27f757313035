#include "pdiag/fillmore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pdiag/error.hpp"

namespace pdiag::fillmore {

namespace {

template <Scalar T>
double scale_of(const DenseMatrix<T>& a) {
  return std::max(1.0, matcore::norm_inf(a));
}

template <Scalar T>
bool near_zero(const T& x, double max_abs, double zero_tol) {
  if constexpr (is_exact_v<T>) {
    return sgn(x) == 0;
  } else {
    return magnitude(x) <= zero_tol * max_abs;
  }
}

template <Scalar T>
double max_magnitude(std::span<const T> v) {
  double m = 0.0;
  for (const T& x : v) m = std::max(m, magnitude(x));
  return m;
}

template <Scalar T>
bool all_nonzero(std::span<const T> v, double zero_tol) {
  const double m = max_magnitude(v);
  if (m == 0.0) return false;
  return std::none_of(v.begin(), v.end(), [&](const T& x) { return near_zero(x, m, zero_tol); });
}

template <Scalar T>
bool is_all_ones(std::span<const T> v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x == scalar_from_int<T>(1); });
}

template <Scalar T>
void check_trace(const DenseMatrix<T>& a, std::span<const T> gammas, const Options& options) {
  T diff = scalar_from_int<T>(0);
  for (const T& g : gammas) diff += g;
  diff -= matcore::trace(a);
  const bool ok = is_exact_v<T> ? is_zero(diff) : magnitude(diff) <= options.trace_tol * scale_of(a);
  if (!ok) {
    std::ostringstream msg;
    msg << "trace mismatch: sum of diagonal targets differs from tr A by " << magnitude(diff);
    throw DomainError(msg.str());
  }
}

template <Scalar T>
DenseMatrix<T> apply_set_diagonal(const DenseMatrix<T>& a, std::span<const T> gammas) {
  return DenseMatrix<T>::generate(a.size(), [&](std::size_t i, std::size_t j) {
    return i == j ? gammas[i] : T(a(i, j) + (gammas[j] - a(j, j)));
  });
}

template <Scalar T>
std::vector<T> unit_vector(std::size_t n, std::size_t k) {
  std::vector<T> v(n, scalar_from_int<T>(0));
  v[k] = scalar_from_int<T>(1);
  return v;
}

// Standard basis order for diagonal input: simple eigenvalues first.
template <Scalar T>
std::vector<std::vector<T>> diagonal_candidates(const DenseMatrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto multiplicity = [&](std::size_t k) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, i) == a(k, k)) ++c;
    return c;
  };
  std::stable_partition(order.begin(), order.end(), [&](std::size_t k) { return multiplicity(k) == 1; });
  std::vector<std::vector<T>> out;
  for (std::size_t k : order) out.push_back(unit_vector<T>(n, k));
  return out;
}

std::vector<std::vector<Rational>> exact_candidates(const DenseMatrix<Rational>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> out;
  if (matcore::constant_row_sum(a)) out.push_back(matcore::ones<Rational>(n));
  if (matcore::is_diagonal(a)) {
    auto d = diagonal_candidates(a);
    out.insert(out.end(), d.begin(), d.end());
    return out;
  }

  std::vector<Rational> lambdas;
  auto add = [&](const Rational& l) {
    if (std::find(lambdas.begin(), lambdas.end(), l) == lambdas.end()) lambdas.push_back(l);
  };
  // Real eigenvalues close to a fraction with a small denominator, then the
  // diagonal entries (triangular and block-triangular cases).
  try {
    for (const auto& z : spectra::eigenvalues(matcore::to_double(a)).values) {
      if (z.imag() != 0.0) continue;
      for (long den = 1; den <= 12; ++den) {
        Rational cand{mpz_class(static_cast<long>(std::llround(z.real() * static_cast<double>(den)))),
                      mpz_class(den)};
        cand.canonicalize();
        add(cand);
      }
    }
  } catch (const ConvergenceError&) {
  }
  for (std::size_t i = 0; i < n; ++i) add(a(i, i));

  for (const auto& l : lambdas) {
    const auto basis = matcore::kernel_basis(matcore::shift(a, l));
    if (basis.empty()) continue;
    if (basis.size() > 1) {
      std::vector<Rational> sum(n, Rational(0));
      for (const auto& b : basis)
        for (std::size_t i = 0; i < n; ++i) sum[i] += b[i];
      out.push_back(std::move(sum));
    }
    out.insert(out.end(), basis.begin(), basis.end());
  }
  return out;
}

std::vector<std::vector<Complexd>> complex_candidates(const DenseMatrix<Complexd>& a, double cs_tol) {
  std::vector<std::vector<Complexd>> out;
  if (matcore::constant_row_sum(a, cs_tol * scale_of(a))) out.push_back(matcore::ones<Complexd>(a.size()));
  if (matcore::is_diagonal(a)) {
    auto d = diagonal_candidates(a);
    out.insert(out.end(), d.begin(), d.end());
    return out;
  }
  for (auto& p : spectra::eigenpairs(a)) out.push_back(std::move(p.vector));
  return out;
}

std::vector<std::vector<double>> real_candidates(const DenseMatrix<double>& a, double cs_tol) {
  std::vector<std::vector<double>> out;
  if (matcore::constant_row_sum(a, cs_tol * scale_of(a))) out.push_back(matcore::ones<double>(a.size()));
  if (matcore::is_diagonal(a)) {
    auto d = diagonal_candidates(a);
    out.insert(out.end(), d.begin(), d.end());
    return out;
  }
  for (const auto& p : spectra::eigenpairs(matcore::to_complex(a))) {
    if (p.value.imag() != 0.0) continue;
    std::vector<double> v;
    bool real = true;
    for (const auto& z : p.vector) {
      if (std::fabs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z))) real = false;
      v.push_back(z.real());
    }
    if (real) out.push_back(std::move(v));
  }
  return out;
}

template <Scalar T>
void certify_similarity(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const Options& options) {
  const auto sa = spectra::spectrum_of(a).values;
  const auto sb = spectra::spectrum_of(b).values;
  double radius = 1.0;
  for (const auto& z : sa) radius = std::max(radius, std::abs(z));
  const auto m = spectra::match_multisets(sa, sb);
  if (!m.complete || m.max_distance > options.certify_tol * radius) {
    std::ostringstream msg;
    msg << "similarity check failed: spectra differ by " << m.max_distance;
    throw CertificationError(msg.str());
  }
}

template <Scalar T>
SimilarResult<T> similar_impl(const DenseMatrix<T>& a, const DiagonalTarget<T>& target, const Options& options,
                              const std::vector<std::vector<T>>& candidates) {
  const std::size_t n = a.size();
  const std::span<const T> gammas(target.gammas);

  auto finish = [&](DenseMatrix<T> b, SimilarityTrace<T> trace) {
    if (options.certify) certify_similarity(a, b, options);
    return SimilarResult<T>{std::move(b), std::move(trace)};
  };

  auto scaled_then_set = [&](const DenseMatrix<T>& m, std::span<const T> x,
                             SimilarityTrace<T> trace) -> SimilarResult<T> {
    DenseMatrix<T> scaled = m;
    if (!is_all_ones(x)) {
      scaled = matcore::diag_similarity(m, x);
      trace.steps.push_back({StepKind::diagonal_scaling, 0, {}, std::vector<T>(x.begin(), x.end()), {}});
    }
    DenseMatrix<T> b = set_diagonal_cs(scaled, gammas, options);
    std::vector<T> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = gammas[i] - scaled(i, i);
    trace.steps.push_back({StepKind::set_diagonal, 0, {}, target.gammas, std::move(q)});
    return finish(std::move(b), std::move(trace));
  };

  // Eigenvector without zero entries: scale straight into constant row sums.
  for (const auto& v : candidates) {
    if (!all_nonzero<T>(v, options.zero_tol)) continue;
    try {
      return scaled_then_set(a, v, {});
    } catch (const DomainError&) {
    }
  }

  // Otherwise fill the zero entries with an S-conjugation pivoted on a
  // nonzero entry, then scale by S^{-1} v.
  for (const auto& v : candidates) {
    const double vmax = max_magnitude<T>(v);
    if (vmax == 0.0) continue;
    std::vector<std::size_t> zeros, pivots;
    for (std::size_t i = 0; i < n; ++i) (near_zero(v[i], vmax, options.zero_tol) ? zeros : pivots).push_back(i);
    if (zeros.empty()) continue;
    std::stable_sort(pivots.begin(), pivots.end(),
                     [&](std::size_t x, std::size_t y) { return magnitude(v[x]) > magnitude(v[y]); });
    for (std::size_t k : pivots) {
      std::vector<T> x = v;
      for (std::size_t i : zeros) x[i] = T(v[i] - v[k]);
      try {
        SimilarityTrace<T> trace;
        trace.steps.push_back({StepKind::s_conjugation, k, zeros, {}, {}});
        return scaled_then_set(s_conjugation<T>(a, k, zeros), x, std::move(trace));
      } catch (const DomainError&) {
      }
    }
  }
  throw InfeasibleError("no eigenvector usable for the diagonal construction on this backend");
}

template <Scalar T>
void common_checks(const DenseMatrix<T>& a, const DiagonalTarget<T>& target, const Options& options) {
  validate(target, a.size());
  if (matcore::is_scalar_matrix(a)) {
    throw DomainError("matrix is scalar: its only similar matrix is itself");
  }
  check_trace<T>(a, target.gammas, options);
}

}  // namespace

template <Scalar T>
DenseMatrix<T> s_conjugation(const DenseMatrix<T>& a, std::size_t pivot, std::span<const std::size_t> rows) {
  const std::size_t n = a.size();
  if (pivot >= n) throw DimensionError("s_conjugation: pivot out of range");
  std::vector<bool> in_rows(n, false);
  for (std::size_t i : rows) {
    if (i >= n || i == pivot) throw DomainError("s_conjugation: invalid row set");
    in_rows[i] = true;
  }
  // A S: column pivot gains the listed columns.
  std::vector<T> as = a.entries();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i : rows) as[r * n + pivot] += a(r, i);
  // S^{-1} (A S): listed rows lose row pivot.
  std::vector<T> out = as;
  for (std::size_t i : rows)
    for (std::size_t c = 0; c < n; ++c) out[i * n + c] -= as[pivot * n + c];
  return DenseMatrix<T>(n, std::move(out));
}

template <Scalar T>
DenseMatrix<T> set_diagonal_cs(const DenseMatrix<T>& a, std::span<const T> gammas, const Options& options) {
  matcore::detail::require_length(a.size(), gammas.size(), "diagonal target");
  const double tol = is_exact_v<T> ? 0.0 : options.cs_tol * scale_of(a);
  if (!matcore::constant_row_sum(a, tol)) throw DomainError("set_diagonal_cs: matrix does not have constant row sums");
  check_trace(a, gammas, options);
  return apply_set_diagonal(a, gammas);
}

template <Scalar T>
DenseMatrix<T> SimilarityTrace<T>::replay(const DenseMatrix<T>& a) const {
  DenseMatrix<T> cur = a;
  for (const auto& s : steps) {
    switch (s.kind) {
      case StepKind::s_conjugation:
        cur = s_conjugation<T>(cur, s.pivot, s.rows);
        break;
      case StepKind::diagonal_scaling:
        cur = matcore::diag_similarity<T>(cur, s.values);
        break;
      case StepKind::set_diagonal:
        cur = apply_set_diagonal<T>(cur, s.values);
        break;
    }
  }
  return cur;
}

template DenseMatrix<Rational> s_conjugation(const DenseMatrix<Rational>&, std::size_t, std::span<const std::size_t>);
template DenseMatrix<double> s_conjugation(const DenseMatrix<double>&, std::size_t, std::span<const std::size_t>);
template DenseMatrix<Complexd> s_conjugation(const DenseMatrix<Complexd>&, std::size_t, std::span<const std::size_t>);
template DenseMatrix<Rational> set_diagonal_cs(const DenseMatrix<Rational>&, std::span<const Rational>, const Options&);
template DenseMatrix<double> set_diagonal_cs(const DenseMatrix<double>&, std::span<const double>, const Options&);
template DenseMatrix<Complexd> set_diagonal_cs(const DenseMatrix<Complexd>&, std::span<const Complexd>, const Options&);
template struct SimilarityTrace<Rational>;
template struct SimilarityTrace<double>;
template struct SimilarityTrace<Complexd>;

SimilarResult<Rational> similar_with_diagonal(const DenseMatrix<Rational>& a, const DiagonalTarget<Rational>& target,
                                              const Options& options) {
  common_checks(a, target, options);
  return similar_impl(a, target, options, exact_candidates(a));
}

SimilarResult<double> similar_with_diagonal(const DenseMatrix<double>& a, const DiagonalTarget<double>& target,
                                            const Options& options) {
  common_checks(a, target, options);
  return similar_impl(a, target, options, real_candidates(a, options.cs_tol));
}

SimilarResult<Complexd> similar_with_diagonal(const DenseMatrix<Complexd>& a, const DiagonalTarget<Complexd>& target,
                                              const Options& options) {
  common_checks(a, target, options);
  return similar_impl(a, target, options, complex_candidates(a, options.cs_tol));
}

DenseMatrix<Rational> unscaled_s_update(const DenseMatrix<Rational>& a, std::span<const Rational> gammas) {
  const std::size_t n = a.size();
  matcore::detail::require_length(n, gammas.size(), "diagonal target");
  std::vector<std::size_t> rows;
  for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
  const DenseMatrix<Rational> m = s_conjugation<Rational>(a, 0, rows);
  std::vector<Rational> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = gammas[i] - m(i, i);
  return matcore::rank_one_add<Rational>(m, matcore::ones<Rational>(n), q);
}

DenseMatrix<Complexd> brauer_shift(const DenseMatrix<Complexd>& a, const spectra::EigenPair& v,
                                   std::span<const Complexd> q, double tol) {
  matcore::detail::require_length(a.size(), v.vector.size(), "eigenvector");
  matcore::detail::require_length(a.size(), q.size(), "q");
  const auto av = matcore::apply<Complexd>(a, v.vector);
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(av[i] - v.value * v.vector[i]));
  const double bound = tol * scale_of(a) * std::max(1.0, max_magnitude<Complexd>(v.vector));
  if (!(r <= bound)) {
    std::ostringstream msg;
    msg << "brauer_shift: eigenpair residual " << r << " exceeds " << bound;
    throw DomainError(msg.str());
  }
  return matcore::rank_one_add<Complexd>(a, v.vector, q);
}

DenseMatrix<Rational> brauer_shift(const DenseMatrix<Rational>& a, const Rational& lambda, std::span<const Rational> v,
                                   std::span<const Rational> q) {
  const auto av = matcore::apply(a, v);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (av[i] != lambda * v[i]) throw DomainError("brauer_shift: vector is not an eigenvector for lambda");
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
    throw DomainError("brauer_shift: zero vector");
  return matcore::rank_one_add(a, v, q);
}

}  // namespace pdiag::fillmore
