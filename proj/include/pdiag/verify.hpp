#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

// Post-hoc checks of a claimed realization. Uses the eigenvalue engine in
// spectra and nothing from the constructions.
namespace pdiag::verify {

struct Checks {
  bool nonnegative = false;
  bool constant_row_sums = false;
};

/// Unset values select the backend default: diagonal 0 on rationals and
/// 1e-10 on floats, row sums 0 on rationals and 1e-10 * max(1, ||B||) on
/// floats, smallest entry 0 on rationals and -1e-12 on floats.
struct Thresholds {
  std::optional<double> diagonal;
  double spectrum_rel = 1e-7;  // times max(1, max |lambda|)
  std::optional<double> min_entry;
  std::optional<double> row_sum;
};

struct Check {
  bool requested = false;
  double value = 0.0;      // residual, or the smallest entry for nonnegativity
  double threshold = 0.0;
  bool pass = true;
};

struct Certificate {
  Check diagonal;        // max |B_ii - gamma_i|
  Check spectrum;        // max matched eigenvalue distance
  Check nonnegativity;   // min entry, passes when >= threshold
  Check row_sums;        // max |row sum - alpha|
  std::vector<Complexd> computed_spectrum;
  bool pass = true;
};

Certificate certify(const DenseMatrix<Rational>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const Rational>> diagonal, const Checks& checks = {},
                    const Thresholds& thresholds = {});
Certificate certify(const DenseMatrix<double>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const double>> diagonal, const Checks& checks = {},
                    const Thresholds& thresholds = {});
Certificate certify(const DenseMatrix<Complexd>& b, std::optional<std::span<const Complexd>> spectrum,
                    std::optional<std::span<const Complexd>> diagonal, const Checks& checks = {},
                    const Thresholds& thresholds = {});

}  // namespace pdiag::verify
