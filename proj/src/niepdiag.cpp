#include "pdiag/niepdiag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "pdiag/error.hpp"
#include "pdiag/matcore.hpp"
#include "pdiag/spectra.hpp"

namespace pdiag::niep {

using pdiag::to_string;

namespace {

std::string describe(const ExactComplex& z) {
  std::string s = to_string(z.re);
  if (z.im > 0) s += "+" + to_string(z.im) + "i";
  if (z.im < 0) s += to_string(z.im) + "i";
  return s;
}

std::string describe(std::span<const std::size_t> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

bool dominated(const Rational& lambda1, const ExactComplex& z) { return sgn(lambda1) >= 0 && lambda1 * lambda1 >= z.norm2(); }

void require_nonnegative(std::span<const Rational> gammas) {
  for (const auto& g : gammas)
    if (sgn(g) < 0) throw DomainError("diagonal entry " + to_string(g) + " is negative");
}

void require_nonnegative_result(const DenseMatrix<Rational>& m, const char* what) {
  for (const auto& x : m.entries())
    if (sgn(x) < 0) throw InfeasibleError(std::string(what) + ": negative entry " + to_string(x));
}

// Validates adjacency of conjugates and returns the representative of each pair.
std::vector<ExactComplex> pair_representatives(std::span<const ExactComplex> tail) {
  if (tail.size() % 2 != 0) throw DomainError("tail must consist of conjugate pairs");
  std::vector<ExactComplex> reps;
  for (std::size_t k = 0; k < tail.size(); k += 2) {
    if (!(tail[k + 1] == tail[k].conj())) throw DomainError("conjugate pairs must be adjacent: " + describe(tail[k]));
    if (!in_G(tail[k])) throw DomainError("pair " + describe(tail[k]) + " is not in G");
    reps.push_back(tail[k].im >= 0 ? tail[k] : tail[k].conj());
  }
  return reps;
}

Rational gamma_sum(std::span<const Rational> gammas) {
  Rational s(0);
  for (const auto& g : gammas) s += g;
  return s;
}

template <class R, class C, class Re, class Im>
FeasibilityReport feasibility(const R& l1, const C& l2, const C& l3, const std::array<R, 3>& g, const R& slack, Re re,
                              Im im) {
  FeasibilityReport r;
  r.bounds = std::all_of(g.begin(), g.end(), [&](const R& x) { return x >= -slack && x <= l1 + slack; });
  const R trace_gap = g[0] + g[1] + g[2] - (l1 + re(l2) + re(l3));
  r.trace = trace_gap <= slack && trace_gap >= -slack;
  const R e2g = g[0] * g[1] + g[0] * g[2] + g[1] * g[2];
  const R e2l = l1 * (re(l2) + re(l3)) + re(l2) * re(l3) - im(l2) * im(l3);
  r.e2 = e2g >= e2l - slack;
  const R gmax = std::max({g[0], g[1], g[2]});
  r.max_gamma = gmax >= std::max(re(l2), re(l3)) - slack;
  return r;
}

DenseMatrix<Rational> glue_into(const DenseMatrix<Rational>& a1, const DenseMatrix<Rational>& a2,
                                std::vector<std::vector<Rational>>* ts) {
  auto g = smigoc_glue(a1, a2);
  if (ts) ts->push_back(std::move(g.t));
  return std::move(g.matrix);
}

DenseMatrix<Rational> smigoc_level(const Rational& lambda1, std::span<const ExactComplex> pairs,
                                   std::vector<Rational> gammas, int level, SmigocTrace* trace) {
  const std::size_t m = pairs.size();
  const std::size_t n = 2 * m + 1;
  auto rethrow = [&](const InfeasibleError& e) {
    throw InfeasibleError("level " + std::to_string(level) + ": " + e.what(), level);
  };
  if (m == 1) {
    try {
      return construct_3x3(lambda1, pairs[0], {gammas[0], gammas[1], gammas[2]});
    } catch (const InfeasibleError& e) {
      rethrow(e);
    }
  }

  Rational c = lambda1;
  for (std::size_t k = 0; k + 1 < m; ++k) c += 2 * pairs[k].re;
  for (std::size_t i = 0; i + 3 < n; ++i) c -= gammas[i];
  if (!dominated(c, pairs[m - 1])) {
    throw InfeasibleError("level " + std::to_string(level) + ": bridge c = " + to_string(c) +
                              " is below |" + describe(pairs[m - 1]) + "|",
                          level);
  }
  if (trace) trace->bridges.push_back(c);
  const std::size_t t_slot = trace ? trace->glue_t.size() : 0;

  DenseMatrix<Rational> a2 = DenseMatrix<Rational>::zeros(1);
  try {
    a2 = construct_3x3(c, pairs[m - 1], {gammas[n - 3], gammas[n - 2], gammas[n - 1]});
  } catch (const InfeasibleError& e) {
    rethrow(e);
  }
  std::vector<Rational> head(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(n - 3));
  head.push_back(c);
  const auto a1 = smigoc_level(lambda1, pairs.first(m - 1), std::move(head), level + 1, trace);
  auto g = smigoc_glue(a1, a2);
  if (trace) trace->glue_t.insert(trace->glue_t.begin() + static_cast<std::ptrdiff_t>(t_slot), std::move(g.t));
  return std::move(g.matrix);
}

}  // namespace

std::vector<ExactComplex> Spectrum::values() const {
  std::vector<ExactComplex> out{ExactComplex(perron)};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<Complexd> Spectrum::to_complex() const {
  std::vector<Complexd> out;
  for (const auto& z : values()) out.push_back(z.to_complex());
  return out;
}

Spectrum make_spectrum(std::span<const ExactComplex> values) {
  if (values.empty()) throw DomainError("empty spectrum");
  std::size_t perron = values.size();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].is_real() && (perron == values.size() || values[i].re > values[perron].re)) perron = i;
  if (perron == values.size()) throw DomainError("spectrum has no real entry to serve as Perron value");

  std::vector<std::size_t> reals, upper, lower;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == perron) continue;
    if (values[i].is_real()) {
      reals.push_back(i);
    } else {
      (values[i].im > 0 ? upper : lower).push_back(i);
    }
  }
  std::stable_sort(reals.begin(), reals.end(), [&](auto a, auto b) { return values[a].re > values[b].re; });
  std::stable_sort(upper.begin(), upper.end(), [&](auto a, auto b) {
    if (values[a].re != values[b].re) return values[a].re > values[b].re;
    return values[a].im < values[b].im;
  });

  Spectrum s;
  s.perron = values[perron].re;
  s.input_order.push_back(perron);
  for (std::size_t i : reals) {
    s.tail.push_back(values[i]);
    s.input_order.push_back(i);
  }
  for (std::size_t i : upper) {
    auto it = std::find_if(lower.begin(), lower.end(), [&](std::size_t j) { return values[j] == values[i].conj(); });
    if (it == lower.end()) throw DomainError("spectrum is not closed under conjugation: " + describe(values[i]));
    s.tail.push_back(values[i]);
    s.tail.push_back(values[*it]);
    s.input_order.push_back(i);
    s.input_order.push_back(*it);
    lower.erase(it);
  }
  if (!lower.empty()) throw DomainError("spectrum is not closed under conjugation: " + describe(values[lower[0]]));

  for (const auto& z : s.tail)
    if (!dominated(s.perron, z))
      throw DomainError("Perron value " + to_string(s.perron) + " does not dominate " + describe(z));
  return s;
}

bool in_F(const ExactComplex& z) { return sgn(z.re) <= 0 && z.re * z.re >= z.im * z.im; }

bool in_G(const ExactComplex& z) { return sgn(z.re) <= 0 && 3 * z.re * z.re >= z.im * z.im; }

Membership membership(const ExactComplex& z) {
  if (in_F(z)) return Membership::F;
  if (in_G(z)) return Membership::G_minus_F;
  return Membership::outside;
}

ListClass classify(const Spectrum& spectrum) {
  ListClass out;
  std::size_t f = 0, g = 0;
  for (const auto& z : spectrum.tail) {
    out.membership.push_back(membership(z));
    if (out.membership.back() == Membership::F) ++f;
    if (out.membership.back() == Membership::G_minus_F) ++g;
  }
  const std::size_t total = spectrum.tail.size();
  if (f == total) {
    out.tag = ListTag::SuleimanovaF;
  } else if (f + g < total) {
    out.tag = ListTag::Outside;
  } else if (f == 0) {
    out.tag = ListTag::SmigocG;
  } else {
    out.tag = ListTag::Mixed;
  }
  return out;
}

std::string to_string(ListTag tag) {
  switch (tag) {
    case ListTag::SuleimanovaF: return "SuleimanovaF";
    case ListTag::SmigocG: return "SmigocG";
    case ListTag::Mixed: return "Mixed";
    case ListTag::Outside: return "Outside";
  }
  return "Outside";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::F: return "F";
    case Membership::G_minus_F: return "G-F";
    case Membership::outside: return "neither";
  }
  return "neither";
}

bool check_trace(const Spectrum& spectrum, std::span<const Rational> gammas, const Rational& tol) {
  matcore::detail::require_length(spectrum.size(), gammas.size(), "diagonal target");
  Rational diff = gamma_sum(gammas) - spectrum.perron;
  for (const auto& z : spectrum.tail) diff -= z.re;
  return abs(diff) <= tol;
}

std::vector<std::string> FeasibilityReport::failures() const {
  std::vector<std::string> out;
  if (!bounds) out.emplace_back("i: 0 <= gamma_k <= lambda_1");
  if (!trace) out.emplace_back("ii: sum gamma = sum lambda");
  if (!e2) out.emplace_back("iii: e2(gamma) >= e2(lambda)");
  if (!max_gamma) out.emplace_back("iv: max gamma >= Re lambda_2");
  return out;
}

FeasibilityReport perfect_feasible(const Rational& lambda1, const ExactComplex& lambda2, const ExactComplex& lambda3,
                                   const std::array<Rational, 3>& gammas) {
  const bool both_real = lambda2.is_real() && lambda3.is_real();
  if (!both_real && !(lambda3 == lambda2.conj())) {
    throw DomainError("lambda_2 and lambda_3 must be real or a conjugate pair");
  }
  return feasibility<Rational, ExactComplex>(
      lambda1, lambda2, lambda3, gammas, Rational(0), [](const ExactComplex& z) { return z.re; },
      [](const ExactComplex& z) { return z.im; });
}

FeasibilityReport perfect_feasible(double lambda1, Complexd lambda2, Complexd lambda3,
                                   const std::array<double, 3>& gammas, double slack) {
  return feasibility<double, Complexd>(
      lambda1, lambda2, lambda3, gammas, slack, [](const Complexd& z) { return z.real(); },
      [](const Complexd& z) { return z.imag(); });
}

DenseMatrix<Rational> suleimanova_primitive(const Rational& lambda1, std::span<const ExactComplex> tail) {
  const std::size_t n = tail.size() + 1;
  std::vector<Rational> m(n * n, Rational(0));
  m[0] = lambda1;
  for (std::size_t k = 0; k < tail.size(); ++k) {
    const auto& z = tail[k];
    if (!in_F(z)) throw DomainError(describe(z) + " is not in F");
    if (!dominated(lambda1, z)) throw DomainError(to_string(lambda1) + " does not dominate " + describe(z));
    const std::size_t i = k + 1;
    if (z.is_real()) {
      m[i * n] = lambda1 - z.re;
      m[i * n + i] = z.re;
      continue;
    }
    if (k + 1 >= tail.size() || !(tail[k + 1] == z.conj())) {
      throw DomainError("conjugate pairs must be adjacent: " + describe(z));
    }
    const Rational& x = z.re;
    const Rational& y = z.im;
    m[i * n] = lambda1 - x + y;
    m[i * n + i] = x;
    m[i * n + i + 1] = -y;
    m[(i + 1) * n] = lambda1 - x - y;
    m[(i + 1) * n + i] = y;
    m[(i + 1) * n + i + 1] = x;
    ++k;
  }
  return DenseMatrix<Rational>(n, std::move(m));
}

DenseMatrix<Rational> realize_suleimanova(const Rational& lambda1, std::span<const ExactComplex> tail,
                                          std::span<const Rational> gammas) {
  const std::size_t n = tail.size() + 1;
  matcore::detail::require_length(n, gammas.size(), "diagonal target");
  require_nonnegative(gammas);
  const auto t = suleimanova_primitive(lambda1, tail);
  if (gamma_sum(gammas) != matcore::trace(t)) throw DomainError("trace of the diagonal differs from the eigenvalue sum");
  std::vector<Rational> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = gammas[i] - t(i, i);
  auto b = matcore::rank_one_add<Rational>(t, matcore::ones<Rational>(n), q);
  require_nonnegative_result(b, "Suleimanova realization");
  return b;
}

DenseMatrix<Rational> realize_suleimanova(const Spectrum& spectrum, std::span<const Rational> gammas) {
  return realize_suleimanova(spectrum.perron, spectrum.tail, gammas);
}

DenseMatrix<Rational> construct_3x3(const Rational& lambda1, const ExactComplex& pair,
                                    const std::array<Rational, 3>& gammas) {
  if (!in_G(pair)) throw DomainError(describe(pair) + " is not in G");
  if (!dominated(lambda1, pair)) throw DomainError(to_string(lambda1) + " does not dominate " + describe(pair));
  require_nonnegative(gammas);
  const auto report = perfect_feasible(lambda1, pair, pair.conj(), gammas);
  if (!report.ok()) {
    std::string msg = "3x3 conditions fail for lambda_1 = " + to_string(lambda1) + ", " + describe(pair) + ":";
    for (const auto& f : report.failures()) msg += " " + f + ";";
    throw InfeasibleError(msg);
  }
  const auto& [g1, g2, g3] = gammas;
  const Rational gap = lambda1 - g3;
  if (gap == 0) {
    // Feasibility forces g1 = g2 = 0 and a zero pair here.
    const Rational z(0);
    return DenseMatrix<Rational>::from_rows({{z, z, lambda1}, {lambda1, z, z}, {z, z, lambda1}});
  }
  if (abs(gap) <= Rational(1, 10000000000)) {
    throw DomainError("gamma_3 is within 1e-10 of lambda_1 without being equal");
  }
  const Rational& x = pair.re;
  const Rational e2g = g1 * g2 + g1 * g3 + g2 * g3;
  const Rational p = (e2g - (2 * lambda1 * x + pair.norm2())) / gap;
  const Rational z(0);
  auto m = DenseMatrix<Rational>::from_rows({{g1, z, Rational(lambda1 - g1)},
                                             {Rational(lambda1 - g2 - p), g2, p},
                                             {z, Rational(lambda1 - g3), g3}});
  require_nonnegative_result(m, "3x3 construction");
  return m;
}

GlueResult smigoc_glue(const DenseMatrix<Rational>& a1, const DenseMatrix<Rational>& a2) {
  const std::size_t n1 = a1.size();
  const std::size_t m = a2.size();
  const Rational& c = a1(n1 - 1, n1 - 1);
  const auto alpha = matcore::constant_row_sum(a2);
  if (!alpha || *alpha != c) {
    throw DomainError("glue: second block must have constant row sums equal to " + to_string(c));
  }
  auto t = spectra::left_eigenvector_exact(a2, c);
  const std::size_t k = n1 - 1;
  auto matrix = DenseMatrix<Rational>::generate(k + m, [&](std::size_t i, std::size_t j) -> Rational {
    if (i < k && j < k) return a1(i, j);
    if (i < k) return a1(i, k) * t[j - k];
    if (j < k) return a1(k, j);
    return a2(i - k, j - k);
  });
  return {std::move(matrix), std::move(t)};
}

DenseMatrix<Rational> realize_smigoc(const Rational& lambda1, std::span<const ExactComplex> tail,
                                     std::span<const Rational> gammas, SmigocTrace* trace) {
  const auto pairs = pair_representatives(tail);
  if (pairs.empty()) throw DomainError("realize_smigoc needs at least one conjugate pair");
  matcore::detail::require_length(tail.size() + 1, gammas.size(), "diagonal target");
  require_nonnegative(gammas);
  Rational sum = lambda1;
  for (const auto& z : tail) sum += z.re;
  if (gamma_sum(gammas) != sum) throw DomainError("trace of the diagonal differs from the eigenvalue sum");
  return smigoc_level(lambda1, pairs, std::vector<Rational>(gammas.begin(), gammas.end()), 1, trace);
}

Realization realize_mixed(const Spectrum& spectrum, std::span<const Rational> gammas, const PlanOptions& options) {
  const std::size_t n = spectrum.size();
  matcore::detail::require_length(n, gammas.size(), "diagonal target");
  require_nonnegative(gammas);
  if (!check_trace(spectrum, gammas)) throw DomainError("trace of the diagonal differs from the eigenvalue sum");

  const ListClass cls = classify(spectrum);
  if (cls.tag == ListTag::Outside) {
    throw InfeasibleError("spectrum is Outside: some tail entry is not in G");
  }

  RealizationPlan plan;
  plan.tag = cls.tag;
  std::vector<ExactComplex> f_tail;
  plan.head.emplace_back(spectrum.perron);
  for (std::size_t k = 0; k < spectrum.tail.size(); ++k) {
    if (cls.membership[k] == Membership::F) {
      f_tail.push_back(spectrum.tail[k]);
      plan.head.push_back(spectrum.tail[k]);
    } else {
      plan.g_part.push_back(spectrum.tail[k]);
    }
  }
  const std::size_t p = plan.head.size();

  // Builds with slot gammas g; fills bridges and glue vectors of `attempt`.
  auto build = [&](const std::vector<Rational>& g, RealizationPlan& attempt) -> DenseMatrix<Rational> {
    if (plan.g_part.empty()) return realize_suleimanova(spectrum.perron, f_tail, g);
    SmigocTrace tr;
    if (f_tail.empty()) {
      auto b = realize_smigoc(spectrum.perron, plan.g_part, g, &tr);
      attempt.bridges = tr.bridges;
      attempt.glue_t = tr.glue_t;
      return b;
    }
    Rational c(0);
    for (const auto& z : plan.head) c += z.re;
    for (std::size_t s = 0; s + 1 < p; ++s) c -= g[s];
    for (const auto& z : plan.g_part) {
      if (!dominated(c, z)) {
        throw InfeasibleError("level 1: bridge c = " + to_string(c) + " is below |" + describe(z) + "|", 1);
      }
    }
    std::vector<Rational> g1(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(p - 1));
    g1.push_back(c);
    const auto a1 = realize_suleimanova(spectrum.perron, f_tail, g1);
    std::vector<Rational> g2(g.begin() + static_cast<std::ptrdiff_t>(p - 1), g.end());
    DenseMatrix<Rational> a2 = DenseMatrix<Rational>::zeros(1);
    try {
      a2 = realize_smigoc(c, plan.g_part, g2, &tr);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(std::string("inside the G block: ") + e.what(), e.level() + 1);
    }
    attempt.bridges = {c};
    attempt.bridges.insert(attempt.bridges.end(), tr.bridges.begin(), tr.bridges.end());
    std::vector<std::vector<Rational>> ts;
    auto b = glue_into(a1, a2, &ts);
    attempt.glue_t = std::move(ts);
    attempt.glue_t.insert(attempt.glue_t.end(), tr.glue_t.begin(), tr.glue_t.end());
    return b;
  };

  std::vector<std::size_t> initial(n);
  std::iota(initial.begin(), initial.end(), 0);
  if (options.order == AssignmentOrder::automatic) {
    std::stable_sort(initial.begin(), initial.end(), [&](auto a, auto b) { return gammas[a] > gammas[b]; });
  }

  auto attempt = [&](const std::vector<std::size_t>& slots) -> std::optional<DenseMatrix<Rational>> {
    ++plan.attempts;
    std::vector<Rational> g(n);
    for (std::size_t s = 0; s < n; ++s) g[s] = gammas[slots[s]];
    try {
      auto b = build(g, plan);
      plan.slot_to_position = slots;
      return b;
    } catch (const InfeasibleError& e) {
      plan.failures.push_back("assignment " + describe(slots) + ": " + e.what());
    } catch (const DomainError& e) {
      plan.failures.push_back("assignment " + describe(slots) + ": " + e.what());
    }
    return std::nullopt;
  };

  std::optional<DenseMatrix<Rational>> built = attempt(initial);
  if (!built && n <= options.exhaustive_limit) {
    std::vector<std::size_t> slots(n);
    std::iota(slots.begin(), slots.end(), 0);
    do {
      if (slots != initial) built = attempt(slots);
    } while (!built && std::next_permutation(slots.begin(), slots.end()));
  } else if (!built) {
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> slots = initial;
    for (std::size_t r = 0; r < options.random_restarts && !built; ++r) {
      std::shuffle(slots.begin(), slots.end(), rng);
      built = attempt(slots);
    }
  }
  if (!built) {
    std::string msg = "no diagonal assignment worked after " + std::to_string(plan.attempts) + " attempts";
    if (!plan.failures.empty()) msg += "; first failure: " + plan.failures.front();
    throw InfeasibleError(msg);
  }

  plan.final_perm = Permutation(plan.slot_to_position).inverse();
  auto b = matcore::permute_similarity(*built, plan.final_perm);
  for (std::size_t i = 0; i < n; ++i)
    if (b(i, i) != gammas[i]) throw CertificationError("diagonal placement does not match the request");
  return {std::move(b), std::move(plan)};
}

}  // namespace pdiag::niep
