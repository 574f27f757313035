#include "pdiag/cli.hpp"

#include "pdiag/error.hpp"
#include "pdiag/fillmore.hpp"
#include "pdiag/matcore.hpp"
#include "pdiag/spectra.hpp"

namespace pdiag::cli {

namespace {

using io::json;

verify::Thresholds thresholds(const io::ProblemFile& p, const Flags& f) {
  verify::Thresholds t;
  if (f.tol) {
    t.spectrum_rel = *f.tol;
  } else if (p.tolerance) {
    t.spectrum_rel = *p.tolerance;
  }
  return t;
}

std::vector<Complexd> as_complex(const std::vector<ExactComplex>& v) {
  std::vector<Complexd> out;
  for (const auto& z : v) out.push_back(z.to_complex());
  return out;
}

const std::vector<ExactComplex>& require(const std::optional<std::vector<ExactComplex>>& v, const char* what) {
  if (!v) throw ParseError(std::string("problem file has no ") + what);
  return *v;
}

std::vector<Rational> require_real(const std::vector<ExactComplex>& v, const char* what) {
  auto r = io::real_values(v);
  if (!r) throw ParseError(std::string(what) + " must be real here");
  return *r;
}

Outcome finish(json report, const verify::Certificate& cert, int failure_code) {
  report["certificate"] = io::certificate_to_json(cert);
  report["status"] = cert.pass ? "pass" : "fail";
  return {cert.pass ? exit_ok : failure_code, std::move(report)};
}

Outcome classify(const io::ProblemFile& p) {
  const auto s = niep::make_spectrum(require(p.spectrum, "spectrum"));
  json report = io::class_to_json(s, niep::classify(s));
  report["status"] = "ok";
  return {exit_ok, std::move(report)};
}

Outcome realize(const io::ProblemFile& p, const Flags& f) {
  if (p.mode.value_or(io::Mode::nonnegative) != io::Mode::nonnegative) {
    throw ParseError("realize works in nonnegative mode only");
  }
  const auto& values = require(p.spectrum, "spectrum");
  const auto gammas = require_real(require(p.diagonal, "diagonal"), "diagonal");
  const auto s = niep::make_spectrum(values);
  niep::PlanOptions opts;
  opts.order = f.order.value_or(p.order);
  opts.seed = f.seed.value_or(p.seed);
  const auto r = niep::realize_mixed(s, gammas, opts);

  const auto lambda = as_complex(values);
  const auto cert = verify::certify(r.matrix, std::span<const Complexd>(lambda), std::span<const Rational>(gammas),
                                    {true, true}, thresholds(p, f));
  json report{{"class", niep::to_string(r.plan.tag)},
              {"matrix", io::matrix_to_json(r.matrix, f.exact)},
              {"plan", io::plan_to_json(r.plan, f.exact)}};
  return finish(std::move(report), cert, exit_self_check_failed);
}

template <Scalar T>
Outcome similar_report(const DenseMatrix<T>& a, const fillmore::DiagonalTarget<T>& target, const io::ProblemFile& p,
                       const Flags& f, const char* backend) {
  const auto res = fillmore::similar_with_diagonal(a, target);
  const auto lambda = spectra::spectrum_of(a).values;
  const auto cert = verify::certify(res.matrix, std::span<const Complexd>(lambda),
                                    std::span<const T>(target.gammas), {}, thresholds(p, f));
  json report{{"backend", backend}, {"trace", io::trace_to_json(res.trace)}};
  if constexpr (is_exact_v<T>) {
    report["matrix"] = io::matrix_to_json(res.matrix, f.exact);
  } else {
    report["matrix"] = io::matrix_to_json(res.matrix);
  }
  return finish(std::move(report), cert, exit_self_check_failed);
}

Outcome similar(const io::ProblemFile& p, const Flags& f) {
  if (!p.matrix) throw ParseError("problem file has no matrix");
  const auto& diag = require(p.diagonal, "diagonal");
  const auto mode = p.mode.value_or(io::Mode::general) == io::Mode::nonnegative ? fillmore::TargetMode::nonnegative
                                                                                : fillmore::TargetMode::general;
  const auto real_a = io::real_matrix(*p.matrix);
  const auto real_g = io::real_values(diag);

  if (f.exact) {
    if (!real_a || !real_g) throw ParseError("--exact needs a real matrix and a real diagonal");
    return similar_report(*real_a, fillmore::DiagonalTarget<Rational>{*real_g, mode}, p, f, "rational");
  }
  if (real_a && real_g) {
    const auto a = matcore::to_double(*real_a);
    fillmore::DiagonalTarget<double> target{{}, mode};
    for (const auto& g : *real_g) target.gammas.push_back(to_double(g));
    try {
      return similar_report(a, target, p, f, "real");
    } catch (const InfeasibleError&) {
      // No real eigenpair worked; the complex backend always has one.
    }
  }
  fillmore::DiagonalTarget<Complexd> target{as_complex(diag), mode};
  return similar_report(io::complex_matrix(*p.matrix), target, p, f, "complex");
}

Outcome verify_cmd(const io::ProblemFile& p, const Flags& f) {
  if (!p.matrix) throw ParseError("problem file has no matrix");
  const auto mode = p.mode.value_or(io::Mode::nonnegative);
  const verify::Checks checks = p.checks.value_or(verify::Checks{mode == io::Mode::nonnegative, false});
  std::vector<Complexd> lambda;
  std::optional<std::span<const Complexd>> spectrum;
  if (p.spectrum) {
    lambda = as_complex(*p.spectrum);
    spectrum = lambda;
  }
  const auto th = thresholds(p, f);
  const auto real_a = io::real_matrix(*p.matrix);
  const auto real_g = p.diagonal ? io::real_values(*p.diagonal) : std::nullopt;

  verify::Certificate cert;
  if (real_a && (!p.diagonal || real_g)) {
    std::optional<std::span<const Rational>> diagonal;
    if (real_g) diagonal = *real_g;
    cert = verify::certify(*real_a, spectrum, diagonal, checks, th);
  } else {
    std::vector<Complexd> g;
    std::optional<std::span<const Complexd>> diagonal;
    if (p.diagonal) {
      g = as_complex(*p.diagonal);
      diagonal = g;
    }
    cert = verify::certify(io::complex_matrix(*p.matrix), spectrum, diagonal, checks, th);
  }
  return finish(json::object(), cert, exit_check_failed);
}

Outcome error(int code, const char* status, const std::exception& e) {
  return {code, json{{"status", status}, {"error", e.what()}}};
}

}  // namespace

Outcome run(std::string_view command, const io::ProblemFile& problem, const Flags& flags) {
  try {
    if (command == "classify") return classify(problem);
    if (command == "realize") return realize(problem, flags);
    if (command == "similar") return similar(problem, flags);
    if (command == "verify") return verify_cmd(problem, flags);
    throw ParseError("unknown command " + std::string(command));
  } catch (const InfeasibleError& e) {
    return error(exit_infeasible, "infeasible", e);
  } catch (const CertificationError& e) {
    return error(exit_self_check_failed, "certification_failed", e);
  } catch (const ConvergenceError& e) {
    return error(exit_infeasible, "no_convergence", e);
  } catch (const Error& e) {
    return error(exit_invalid_input, "invalid_input", e);
  }
}

Outcome run_text(std::string_view command, const std::string& text, const Flags& flags) {
  io::ProblemFile problem;
  try {
    problem = io::parse_problem_text(text);
  } catch (const Error& e) {
    return error(exit_invalid_input, "invalid_input", e);
  }
  return run(command, problem, flags);
}

}  // namespace pdiag::cli
