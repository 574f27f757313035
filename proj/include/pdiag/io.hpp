#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdiag/fillmore.hpp"
#include "pdiag/matrix.hpp"
#include "pdiag/niepdiag.hpp"
#include "pdiag/scalar.hpp"
#include "pdiag/verify.hpp"

// JSON problem files and reports.
namespace pdiag::io {

using json = nlohmann::json;

enum class Mode { nonnegative, general };

/// Numbers are read exactly: JSON integers as integers, JSON floats through
/// their shortest decimal form, strings as "p/q" or decimals. A complex value
/// is a two-element array [re, im] or a plain real.
struct ProblemFile {
  std::optional<std::vector<ExactComplex>> spectrum;
  std::optional<std::vector<ExactComplex>> diagonal;
  std::optional<std::vector<std::vector<ExactComplex>>> matrix;
  std::optional<Mode> mode;  // each command has its own default
  std::optional<double> tolerance;
  niep::AssignmentOrder order = niep::AssignmentOrder::automatic;
  std::uint64_t seed = 0;
  std::optional<verify::Checks> checks;
};

/// Throws ParseError on malformed input.
ProblemFile parse_problem(const json& j);
ProblemFile parse_problem_text(const std::string& text);

Rational parse_real(const json& j);
ExactComplex parse_complex(const json& j);

/// Every entry real: returns the rational matrix, otherwise nullopt.
std::optional<DenseMatrix<Rational>> real_matrix(const std::vector<std::vector<ExactComplex>>& rows);
DenseMatrix<Complexd> complex_matrix(const std::vector<std::vector<ExactComplex>>& rows);
/// Every entry real: the real parts, otherwise nullopt.
std::optional<std::vector<Rational>> real_values(const std::vector<ExactComplex>& values);

json to_json(const Rational& x, bool exact);
json to_json(const Complexd& z);
json to_json(const ExactComplex& z, bool exact);

/// Exact mode writes "p/q" strings, otherwise doubles.
json matrix_to_json(const DenseMatrix<Rational>& m, bool exact);
json matrix_to_json(const DenseMatrix<double>& m);
/// Entries with zero imaginary part are written as plain numbers.
json matrix_to_json(const DenseMatrix<Complexd>& m);

json certificate_to_json(const verify::Certificate& c);
json plan_to_json(const niep::RealizationPlan& plan, bool exact);
json class_to_json(const niep::Spectrum& s, const niep::ListClass& c);

template <Scalar T>
json trace_to_json(const fillmore::SimilarityTrace<T>& trace);

}  // namespace pdiag::io
