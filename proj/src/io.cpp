#include "pdiag/io.hpp"

#include "pdiag/error.hpp"

namespace pdiag::io {

namespace {

std::vector<ExactComplex> complex_list(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array");
  std::vector<ExactComplex> out;
  for (const auto& x : j) out.push_back(parse_complex(x));
  return out;
}

json step_values(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json step_values(const std::vector<double>& v) { return v; }

json step_values(const std::vector<Complexd>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

const char* step_name(fillmore::StepKind k) {
  switch (k) {
    case fillmore::StepKind::s_conjugation: return "s_conjugation";
    case fillmore::StepKind::diagonal_scaling: return "diagonal_scaling";
    case fillmore::StepKind::set_diagonal: return "set_diagonal";
  }
  return "unknown";
}

json check_to_json(const verify::Check& c) {
  if (!c.requested) return nullptr;
  json out{{"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
  return out;
}

}  // namespace

Rational parse_real(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(mpz_class(std::to_string(j.get<std::uint64_t>())))
                                  : Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) throw ParseError("non-finite number");
    return parse_rational(j.dump());
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a real number, got " + j.dump());
}

ExactComplex parse_complex(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex value must be [re, im], got " + j.dump());
    return {parse_real(j[0]), parse_real(j[1])};
  }
  return ExactComplex(parse_real(j));
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  ProblemFile p;
  if (j.contains("spectrum")) p.spectrum = complex_list(j["spectrum"], "spectrum");
  if (j.contains("diagonal")) p.diagonal = complex_list(j["diagonal"], "diagonal");
  if (j.contains("matrix")) {
    const auto& m = j["matrix"];
    if (!m.is_array() || m.empty()) throw ParseError("matrix must be a nonempty array of rows");
    std::vector<std::vector<ExactComplex>> rows;
    for (const auto& row : m) {
      rows.push_back(complex_list(row, "matrix row"));
      if (rows.back().size() != m.size()) throw ParseError("matrix must be square");
    }
    p.matrix = std::move(rows);
  }
  if (j.contains("mode")) {
    const auto mode = j["mode"].get<std::string>();
    if (mode == "nonnegative") {
      p.mode = Mode::nonnegative;
    } else if (mode == "general") {
      p.mode = Mode::general;
    } else {
      throw ParseError("mode must be \"nonnegative\" or \"general\"");
    }
  }
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number()) throw ParseError("tolerance must be a number");
    p.tolerance = j["tolerance"].get<double>();
  }
  if (j.contains("order")) {
    const auto order = j["order"].get<std::string>();
    if (order == "keep") {
      p.order = niep::AssignmentOrder::keep;
    } else if (order == "auto") {
      p.order = niep::AssignmentOrder::automatic;
    } else {
      throw ParseError("order must be \"keep\" or \"auto\"");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ParseError("seed must be an integer");
    p.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("checks")) {
    verify::Checks c;
    c.nonnegative = j["checks"].value("nonnegative", false);
    c.constant_row_sums = j["checks"].value("constant_row_sums", false);
    p.checks = c;
  }
  if (p.spectrum && p.diagonal && p.spectrum->size() != p.diagonal->size()) {
    throw ParseError("spectrum and diagonal lengths differ");
  }
  if (p.matrix && p.diagonal && p.matrix->size() != p.diagonal->size()) {
    throw ParseError("matrix and diagonal sizes differ");
  }
  return p;
}

ProblemFile parse_problem_text(const std::string& text) {
  try {
    return parse_problem(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::optional<DenseMatrix<Rational>> real_matrix(const std::vector<std::vector<ExactComplex>>& rows) {
  std::vector<Rational> e;
  for (const auto& row : rows)
    for (const auto& z : row) {
      if (!z.is_real()) return std::nullopt;
      e.push_back(z.re);
    }
  return DenseMatrix<Rational>(rows.size(), std::move(e));
}

DenseMatrix<Complexd> complex_matrix(const std::vector<std::vector<ExactComplex>>& rows) {
  std::vector<Complexd> e;
  for (const auto& row : rows)
    for (const auto& z : row) e.push_back(z.to_complex());
  return DenseMatrix<Complexd>(rows.size(), std::move(e));
}

std::optional<std::vector<Rational>> real_values(const std::vector<ExactComplex>& values) {
  std::vector<Rational> out;
  for (const auto& z : values) {
    if (!z.is_real()) return std::nullopt;
    out.push_back(z.re);
  }
  return out;
}

json to_json(const Rational& x, bool exact) {
  if (exact) return to_string(x);
  return to_double(x);
}

json to_json(const Complexd& z) { return json::array({z.real(), z.imag()}); }

json to_json(const ExactComplex& z, bool exact) { return json::array({to_json(z.re, exact), to_json(z.im, exact)}); }

json matrix_to_json(const DenseMatrix<Rational>& m, bool exact) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (const auto& x : m.row(i)) row.push_back(to_json(x, exact));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix_to_json(const DenseMatrix<double>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto r = m.row(i);
    out.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return out;
}

json matrix_to_json(const DenseMatrix<Complexd>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (const auto& z : m.row(i)) row.push_back(z.imag() == 0.0 ? json(z.real()) : to_json(z));
    out.push_back(std::move(row));
  }
  return out;
}

json certificate_to_json(const verify::Certificate& c) {
  json spectrum = json::array();
  for (const auto& z : c.computed_spectrum) spectrum.push_back(to_json(z));
  return json{{"pass", c.pass},
              {"diagonal", check_to_json(c.diagonal)},
              {"spectrum", check_to_json(c.spectrum)},
              {"nonnegativity", check_to_json(c.nonnegativity)},
              {"row_sums", check_to_json(c.row_sums)},
              {"computed_spectrum", spectrum}};
}

json plan_to_json(const niep::RealizationPlan& plan, bool exact) {
  json head = json::array(), g_part = json::array(), bridges = json::array(), ts = json::array();
  for (const auto& z : plan.head) head.push_back(to_json(z, exact));
  for (const auto& z : plan.g_part) g_part.push_back(to_json(z, exact));
  for (const auto& c : plan.bridges) bridges.push_back(to_json(c, exact));
  for (const auto& t : plan.glue_t) {
    json v = json::array();
    for (const auto& x : t) v.push_back(to_json(x, exact));
    ts.push_back(std::move(v));
  }
  return json{{"class", niep::to_string(plan.tag)},
              {"head", head},
              {"g_part", g_part},
              {"bridges", bridges},
              {"slot_to_position", plan.slot_to_position},
              {"final_permutation", plan.final_perm.image()},
              {"glue_t", ts},
              {"attempts", plan.attempts},
              {"failures", plan.failures}};
}

json class_to_json(const niep::Spectrum& s, const niep::ListClass& c) {
  json tail = json::array(), members = json::array();
  for (std::size_t k = 0; k < s.tail.size(); ++k) {
    tail.push_back(to_json(s.tail[k], true));
    members.push_back(niep::to_string(c.membership[k]));
  }
  return json{{"class", niep::to_string(c.tag)},
              {"perron", to_string(s.perron)},
              {"tail", tail},
              {"membership", members}};
}

template <Scalar T>
json trace_to_json(const fillmore::SimilarityTrace<T>& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json step{{"kind", step_name(s.kind)}};
    if (s.kind == fillmore::StepKind::s_conjugation) {
      step["pivot"] = s.pivot;
      step["rows"] = s.rows;
    } else {
      step["values"] = step_values(s.values);
    }
    if (!s.q.empty()) step["q"] = step_values(s.q);
    steps.push_back(std::move(step));
  }
  return steps;
}

template json trace_to_json(const fillmore::SimilarityTrace<Rational>&);
template json trace_to_json(const fillmore::SimilarityTrace<double>&);
template json trace_to_json(const fillmore::SimilarityTrace<Complexd>&);

}  // namespace pdiag::io
