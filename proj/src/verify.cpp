#include "pdiag/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdiag/error.hpp"
#include "pdiag/matcore.hpp"
#include "pdiag/spectra.hpp"

namespace pdiag::verify {

namespace {

template <Scalar T>
double real_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return to_double(x);
  } else if constexpr (is_complex_v<T>) {
    return x.real();
  } else {
    return x;
  }
}

template <Scalar T>
Certificate certify_impl(const DenseMatrix<T>& b, std::optional<std::span<const Complexd>> spectrum,
                         std::optional<std::span<const T>> diagonal, const Checks& checks, const Thresholds& th) {
  const std::size_t n = b.size();
  const double scale = std::max(1.0, matcore::norm_inf(b));
  Certificate c;

  if (diagonal) {
    matcore::detail::require_length(n, diagonal->size(), "diagonal target");
    c.diagonal.requested = true;
    c.diagonal.threshold = th.diagonal.value_or(is_exact_v<T> ? 0.0 : 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
      const T d = b(i, i) - (*diagonal)[i];
      if constexpr (is_exact_v<T>) {
        // An exact mismatch below double resolution must still fail.
        if (d != 0) c.diagonal.value = std::max({c.diagonal.value, magnitude(d), std::numeric_limits<double>::min()});
      } else {
        c.diagonal.value = std::max(c.diagonal.value, magnitude(d));
      }
    }
    c.diagonal.pass = c.diagonal.value <= c.diagonal.threshold;
  }

  if (spectrum) {
    matcore::detail::require_length(n, spectrum->size(), "spectrum");
    c.spectrum.requested = true;
    double radius = 1.0;
    for (const auto& z : *spectrum) radius = std::max(radius, std::abs(z));
    c.spectrum.threshold = th.spectrum_rel * radius;
    try {
      c.computed_spectrum = spectra::spectrum_of(b).values;
      const auto m = spectra::match_multisets(c.computed_spectrum, *spectrum);
      c.spectrum.value = m.complete ? m.max_distance : std::numeric_limits<double>::infinity();
    } catch (const ConvergenceError&) {
      c.spectrum.value = std::numeric_limits<double>::infinity();
    }
    c.spectrum.pass = c.spectrum.value <= c.spectrum.threshold;
  }

  if (checks.nonnegative) {
    c.nonnegativity.requested = true;
    c.nonnegativity.threshold = th.min_entry.value_or(is_exact_v<T> ? 0.0 : -1e-12);
    c.nonnegativity.value = std::numeric_limits<double>::infinity();
    bool real = true;
    bool exact_negative = false;
    for (const T& x : b.entries()) {
      c.nonnegativity.value = std::min(c.nonnegativity.value, real_value(x));
      if constexpr (is_complex_v<T>) {
        if (x.imag() != 0.0) real = false;
      }
      if constexpr (is_exact_v<T>) {
        if (sgn(x) < 0) exact_negative = true;
      }
    }
    c.nonnegativity.pass = real && !exact_negative && c.nonnegativity.value >= c.nonnegativity.threshold;
  }

  if (checks.constant_row_sums) {
    c.row_sums.requested = true;
    c.row_sums.threshold = th.row_sum.value_or(is_exact_v<T> ? 0.0 : 1e-10 * scale);
    const auto sums = matcore::row_sums(b);
    T alpha = sums[0];
    if constexpr (!is_exact_v<T>) {
      alpha = scalar_from_int<T>(0);
      for (const auto& s : sums) alpha += s;
      alpha /= static_cast<double>(n);
    }
    for (const auto& s : sums) {
      const T d = s - alpha;
      if constexpr (is_exact_v<T>) {
        if (d != 0) c.row_sums.value = std::max({c.row_sums.value, magnitude(d), std::numeric_limits<double>::min()});
      } else {
        c.row_sums.value = std::max(c.row_sums.value, magnitude(d));
      }
    }
    c.row_sums.pass = c.row_sums.value <= c.row_sums.threshold;
  }

  c.pass = c.diagonal.pass && c.spectrum.pass && c.nonnegativity.pass && c.row_sums.pass;
  return c;
}

}  // namespace

Certificate certify(const DenseMatrix<Rational>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const Rational>> diagonal, const Checks& checks,
                    const Thresholds& thresholds) {
  return certify_impl(b, spectrum, diagonal, checks, thresholds);
}

Certificate certify(const DenseMatrix<double>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const double>> diagonal, const Checks& checks,
                    const Thresholds& thresholds) {
  return certify_impl(b, spectrum, diagonal, checks, thresholds);
}

Certificate certify(const DenseMatrix<Complexd>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const Complexd>> diagonal, const Checks& checks,
                    const Thresholds& thresholds) {
  return certify_impl(b, spectrum, diagonal, checks, thresholds);
}

}  // namespace pdiag::verify
