#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "niep_gen.hpp"
#include "pdiag/error.hpp"
#include "pdiag/matcore.hpp"
#include "pdiag/niepdiag.hpp"
#include "pdiag/spectra.hpp"

using namespace pdiag;
using fixtures::q;
using fixtures::rm;

namespace {

ExactComplex cx(long re, long im = 0) { return {Rational(re), Rational(im)}; }

niep::Spectrum spec(std::vector<ExactComplex> v) { return niep::make_spectrum(v); }

bool nonnegative(const DenseMatrix<Rational>& m) {
  return std::all_of(m.entries().begin(), m.entries().end(), [](const Rational& x) { return sgn(x) >= 0; });
}

void check_realization(const DenseMatrix<Rational>& b, const std::vector<ExactComplex>& values,
                       const std::vector<Rational>& gammas) {
  CHECK(nonnegative(b));
  CHECK(matcore::diagonal(b) == gammas);
  CHECK(matcore::constant_row_sum(b) == std::optional<Rational>(values[0].re));
  CHECK(spectra::characteristic_polynomial(b) == fixtures::poly_from_roots(values));
}

}  // namespace

TEST_CASE("make_spectrum normalizes the tail and remembers the input order") {
  const auto s = spec({cx(-2, -3), cx(-1), cx(-2, 2), cx(16), cx(-2, 3), cx(-2), cx(-2, -2)});
  CHECK(s.perron == 16);
  CHECK(s.tail == std::vector<ExactComplex>{cx(-1), cx(-2), cx(-2, 2), cx(-2, -2), cx(-2, 3), cx(-2, -3)});
  CHECK(s.input_order == std::vector<std::size_t>{3, 1, 5, 2, 6, 4, 0});
  CHECK(s.size() == 7);

  const auto dup = spec({cx(9), cx(-1, 1), cx(-1, 1), cx(-1, -1), cx(-1, -1)});
  CHECK(dup.tail == std::vector<ExactComplex>{cx(-1, 1), cx(-1, -1), cx(-1, 1), cx(-1, -1)});

  CHECK_THROWS_AS(spec({cx(4), cx(-1, 1)}), DomainError);
  CHECK_THROWS_AS(spec({cx(1), cx(-2)}), DomainError);
  CHECK_THROWS_AS(spec({cx(0, 1), cx(0, -1)}), DomainError);
  CHECK_THROWS_AS(spec({}), DomainError);
}

TEST_CASE("classify") {
  const auto ex2 = niep::classify(niep::make_spectrum(fixtures::mixed_7_values()));
  CHECK(ex2.tag == niep::ListTag::Mixed);
  using M = niep::Membership;
  CHECK(ex2.membership == std::vector<M>{M::F, M::F, M::F, M::F, M::G_minus_F, M::G_minus_F});

  CHECK(niep::classify(spec({cx(5), cx(-1), cx(-2)})).tag == niep::ListTag::SuleimanovaF);
  CHECK(niep::classify(spec({cx(4), cx(-1, 3), cx(-1, -3)})).tag == niep::ListTag::Outside);
  CHECK(niep::classify(spec({cx(6), cx(-2, 3), cx(-2, -3)})).tag == niep::ListTag::SmigocG);
  CHECK(niep::classify(spec({cx(3)})).tag == niep::ListTag::SuleimanovaF);
  CHECK(niep::classify(spec({cx(3), cx(1)})).tag == niep::ListTag::Outside);

  // Boundaries are inside.
  CHECK(niep::membership(cx(-2, 2)) == M::F);
  CHECK(niep::membership(cx(0)) == M::F);
  CHECK(niep::membership(ExactComplex{q(-7, 4), q(3, 1)}) == M::G_minus_F);  // 3 * 49/16 >= 9
  CHECK(niep::membership(ExactComplex{q(-17, 10), q(3, 1)}) == M::outside);  // 3 * 2.89 < 9
  CHECK(niep::to_string(niep::ListTag::Mixed) == "Mixed");
}

TEST_CASE("check_trace") {
  const auto ex2 = niep::make_spectrum(fixtures::mixed_7_values());
  CHECK(niep::check_trace(ex2, fixtures::mixed_diagonal_7()));
  CHECK(niep::check_trace(spec({cx(2), cx(-1), cx(-1)}), std::vector<Rational>(3, Rational(0))));
  CHECK_FALSE(niep::check_trace(spec({cx(3), cx(-2, 2), cx(-2, -2)}), std::vector<Rational>{0, 0, 0}));
  CHECK(niep::check_trace(spec({cx(3), cx(-1)}), std::vector<Rational>{q(1, 1000), 2}, q(1, 100)));
  CHECK_THROWS_AS(niep::check_trace(ex2, std::vector<Rational>{1}), DimensionError);
}

TEST_CASE("suleimanova_primitive") {
  CHECK(niep::suleimanova_primitive(5, std::vector<ExactComplex>{cx(-1), cx(-2)}) ==
        rm({{5, 0, 0}, {6, -1, 0}, {7, 0, -2}}));
  CHECK(niep::suleimanova_primitive(4, std::vector<ExactComplex>{cx(-1, 1), cx(-1, -1)}) ==
        rm({{4, 0, 0}, {6, -1, -1}, {4, 1, -1}}));
  const std::vector<ExactComplex> f{cx(-1), cx(-2), cx(-2, 2), cx(-2, -2)};
  const auto t = niep::suleimanova_primitive(16, f);
  CHECK(t == fixtures::f_block_template_5x5());
  std::vector<ExactComplex> roots{cx(16)};
  roots.insert(roots.end(), f.begin(), f.end());
  CHECK(spectra::characteristic_polynomial(t) == fixtures::poly_from_roots(roots));

  CHECK_THROWS_AS(niep::suleimanova_primitive(6, std::vector<ExactComplex>{cx(-2, 3), cx(-2, -3)}), DomainError);
  CHECK_THROWS_AS(niep::suleimanova_primitive(6, std::vector<ExactComplex>{cx(-2, 1), cx(-1), cx(-2, -1)}),
                  DomainError);
}

TEST_CASE("realize_suleimanova") {
  const std::vector<ExactComplex> t1{cx(-1), cx(-2)};
  CHECK(niep::realize_suleimanova(5, t1, std::vector<Rational>{1, 1, 0}) == rm({{1, 2, 2}, {2, 1, 2}, {3, 2, 0}}));
  const std::vector<ExactComplex> t2{cx(-1), cx(-2)};
  CHECK(niep::realize_suleimanova(3, t2, std::vector<Rational>{0, 0, 0}) == rm({{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}));
  const std::vector<ExactComplex> f{cx(-1), cx(-2), cx(-2, 2), cx(-2, -2)};
  CHECK(niep::realize_suleimanova(16, f, std::vector<Rational>{0, 1, 2, 0, 6}) == fixtures::f_block_5x5());

  CHECK_THROWS_AS(niep::realize_suleimanova(5, t1, std::vector<Rational>{3, -1, 0}), DomainError);
  CHECK_THROWS_AS(niep::realize_suleimanova(5, t1, std::vector<Rational>{1, 1, 1}), DomainError);
  CHECK_THROWS_AS(niep::realize_suleimanova(5, t1, std::vector<Rational>{1, 1}), DimensionError);
}

TEST_CASE("perfect_feasible") {
  auto r = niep::perfect_feasible(6, cx(-2, 3), cx(-2, -3), {2, 0, 0});
  CHECK(r.ok());
  r = niep::perfect_feasible(4, cx(-1, 3), cx(-1, -3), {2, 0, 0});
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.e2);
  CHECK(r.bounds);
  CHECK(r.trace);
  CHECK(r.failures().size() == 1);
  CHECK(niep::perfect_feasible(1, cx(0), cx(0), {1, 0, 0}).ok());
  CHECK_FALSE(niep::perfect_feasible(3, cx(1), cx(1), {0, 0, 5}).ok());
  CHECK_THROWS_AS(niep::perfect_feasible(6, cx(-2, 3), cx(-2, 3), {2, 0, 0}), DomainError);

  const auto d = niep::perfect_feasible(6.0, {-2.0, 3.0}, {-2.0, -3.0}, {2.0, 1e-12, -1e-12}, 1e-9);
  CHECK(d.ok());
}

TEST_CASE("construct_3x3") {
  CHECK(niep::construct_3x3(6, cx(-2, 3), {2, 0, 0}) == fixtures::g_block_3x3());
  CHECK(niep::construct_3x3(1, cx(0), {1, 0, 0}) == rm({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  const auto m = niep::construct_3x3(6, cx(-2, 3), {0, 2, 0});
  CHECK(m == DenseMatrix<Rational>::from_rows({{0, 0, 6}, {q(13, 6), 2, q(11, 6)}, {0, 6, 0}}));
  CHECK(spectra::characteristic_polynomial(m) == fixtures::poly_from_roots({cx(6), cx(-2, 3), cx(-2, -3)}));

  // gamma_3 = lambda_1
  const auto deg = niep::construct_3x3(2, cx(0), {0, 0, 2});
  CHECK(deg == rm({{0, 0, 2}, {2, 0, 0}, {0, 0, 2}}));
  CHECK(spectra::characteristic_polynomial(deg) == fixtures::poly_from_roots({cx(2), cx(0), cx(0)}));
  const Rational tiny = q(1, 100000000000);
  CHECK_THROWS_AS(niep::construct_3x3(2, cx(0), {tiny, 0, Rational(2 - tiny)}), DomainError);

  CHECK_THROWS_AS(niep::construct_3x3(6, cx(-2, 3), {1, 0, 0}), InfeasibleError);
  CHECK_THROWS_AS(niep::construct_3x3(4, cx(-1, 3), {2, 0, 0}), DomainError);
  CHECK_THROWS_AS(niep::construct_3x3(6, cx(-2, 3), {3, 0, -1}), DomainError);
}

TEST_CASE("smigoc_glue") {
  const auto g = niep::smigoc_glue(rm({{1, 2}, {2, 1}}), rm({{0, 1}, {1, 0}}));
  CHECK(g.matrix == rm({{1, 1, 1}, {2, 0, 1}, {2, 1, 0}}));
  CHECK(g.t == std::vector<Rational>{q(1, 2), q(1, 2)});
  CHECK(spectra::characteristic_polynomial(g.matrix) == fixtures::poly_from_roots({cx(3), cx(-1), cx(-1)}));

  const auto a1 = rm({{1, 2}, {2, 1}});
  CHECK(niep::smigoc_glue(a1, rm({{1}})).matrix == a1);

  const auto ex2 = niep::smigoc_glue(fixtures::f_block_5x5(), fixtures::g_block_3x3());
  CHECK(ex2.matrix == fixtures::glued_7x7());
  CHECK(ex2.t == std::vector<Rational>{q(25, 73), q(24, 73), q(24, 73)});

  CHECK_THROWS_AS(niep::smigoc_glue(a1, rm({{0, 2}, {1, 0}})), DomainError);
  CHECK_THROWS_AS(niep::smigoc_glue(a1, rm({{0, 2}, {2, 0}})), DomainError);
}

TEST_CASE("smigoc_glue spectrum law on random blocks") {
  testgen::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 5));
    auto a2 = testgen::int_matrix(rng, m, 0, 6);
    const auto sums = matcore::row_sums(a2);
    const Rational c = *std::max_element(sums.begin(), sums.end()) + testgen::uniform_int(rng, 0, 2);
    a2 = DenseMatrix<Rational>::generate(
        m, [&](std::size_t i, std::size_t j) { return j == i ? Rational(a2(i, j) + c - sums[i]) : a2(i, j); });
    const auto n1 = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 5));
    const auto raw = testgen::int_matrix(rng, n1, -4, 6);
    const auto a1 = DenseMatrix<Rational>::generate(
        n1, [&](std::size_t i, std::size_t j) { return i == n1 - 1 && j == n1 - 1 ? c : raw(i, j); });
    const auto g = niep::smigoc_glue(a1, a2);
    const std::vector<Rational> linear{-c, 1};
    CHECK(fixtures::poly_mul(spectra::characteristic_polynomial(g.matrix), linear) ==
          fixtures::poly_mul(spectra::characteristic_polynomial(a1), spectra::characteristic_polynomial(a2)));
  }
}

TEST_CASE("realize_smigoc") {
  const std::vector<ExactComplex> one{cx(-2, 3), cx(-2, -3)};
  CHECK(niep::realize_smigoc(6, one, std::vector<Rational>{2, 0, 0}) == fixtures::g_block_3x3());

  const std::vector<ExactComplex> two{ExactComplex{-1, q(3, 2)}, ExactComplex{-1, q(-3, 2)}, cx(-2, 3), cx(-2, -3)};
  niep::SmigocTrace tr;
  const std::vector<Rational> zeros(5, Rational(0));
  const auto b = niep::realize_smigoc(6, two, zeros, &tr);
  CHECK(tr.bridges == std::vector<Rational>{4});
  CHECK(tr.glue_t.size() == 1);
  std::vector<ExactComplex> roots{cx(6)};
  roots.insert(roots.end(), two.begin(), two.end());
  check_realization(b, roots, zeros);

  // Depth 0: the whole diagonal weight sits in one slot.
  CHECK_NOTHROW(niep::realize_smigoc(6, one, std::vector<Rational>{0, 2, 0}));
  CHECK_THROWS_AS(niep::realize_smigoc(6, one, std::vector<Rational>{1, 0, 0}), DomainError);
  CHECK_THROWS_AS(niep::realize_smigoc(6, std::vector<ExactComplex>{cx(-1)}, std::vector<Rational>{5, 0}),
                  DomainError);
}

TEST_CASE("realize_mixed reproduces the 7x7 example") {
  const auto s = niep::make_spectrum(fixtures::mixed_7_values());
  const auto r = niep::realize_mixed(s, fixtures::mixed_diagonal_7(), {niep::AssignmentOrder::keep});
  CHECK(r.matrix == fixtures::glued_7x7());
  CHECK(r.plan.tag == niep::ListTag::Mixed);
  CHECK(r.plan.bridges == std::vector<Rational>{6});
  REQUIRE(r.plan.glue_t.size() == 1);
  CHECK(r.plan.glue_t[0] == std::vector<Rational>{q(25, 73), q(24, 73), q(24, 73)});
  CHECK(r.plan.final_perm == Permutation::identity(7));
  CHECK(r.plan.attempts == 1);
  CHECK(r.plan.head.size() == 5);
  CHECK(r.plan.g_part.size() == 2);
}

TEST_CASE("realize_mixed with automatic assignment") {
  const auto values = fixtures::mixed_7_values();
  const auto s = niep::make_spectrum(values);
  const auto r = niep::realize_mixed(s, fixtures::mixed_diagonal_7());
  check_realization(r.matrix, values, fixtures::mixed_diagonal_7());
  CHECK(r.plan.slot_to_position == std::vector<std::size_t>{2, 4, 1, 0, 3, 5, 6});
}

TEST_CASE("realize_mixed small cases") {
  const std::vector<ExactComplex> v{cx(7), cx(-1), cx(-2, 3), cx(-2, -3)};
  const std::vector<Rational> g{1, 1, 0, 0};
  const auto r = niep::realize_mixed(niep::make_spectrum(v), g, {niep::AssignmentOrder::keep});
  CHECK(r.plan.bridges == std::vector<Rational>{5});
  check_realization(r.matrix, v, g);

  const std::vector<ExactComplex> f{cx(5), cx(-1), cx(-2)};
  const std::vector<Rational> gf{1, 1, 0};
  CHECK(niep::realize_mixed(niep::make_spectrum(f), gf, {niep::AssignmentOrder::keep}).matrix ==
        niep::realize_suleimanova(5, std::vector<ExactComplex>{cx(-1), cx(-2)}, gf));

  const std::vector<ExactComplex> single{cx(3)};
  CHECK(niep::realize_mixed(niep::make_spectrum(single), std::vector<Rational>{3}).matrix == rm({{3}}));

  const std::vector<ExactComplex> outside{cx(4), cx(-1, 3), cx(-1, -3)};
  CHECK_THROWS_AS(niep::realize_mixed(niep::make_spectrum(outside), std::vector<Rational>{2, 0, 0}), InfeasibleError);
  CHECK_THROWS_AS(niep::realize_mixed(niep::make_spectrum(v), std::vector<Rational>{1, 1, 1, 0}), DomainError);
  CHECK_THROWS_AS(niep::realize_mixed(niep::make_spectrum(v), std::vector<Rational>{3, -1, 0, 0}), DomainError);
}

TEST_CASE("random Suleimanova, Smigoc and mixed instances") {
  testgen::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 9));
    const auto inst = testgen::suleimanova_instance(rng, n);
    const auto r = niep::realize_mixed(niep::make_spectrum(inst.values), inst.gammas);
    check_realization(r.matrix, inst.values, inst.gammas);
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto pairs = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 4));
    const auto inst = testgen::smigoc_instance(rng, pairs);
    const auto r = niep::realize_mixed(niep::make_spectrum(inst.values), inst.gammas);
    check_realization(r.matrix, inst.values, inst.gammas);
    CHECK(r.plan.failures.empty());
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 4, 9));
    const auto inst = testgen::mixed_instance(rng, n);
    const auto r = niep::realize_mixed(niep::make_spectrum(inst.values), inst.gammas, {niep::AssignmentOrder::keep});
    check_realization(r.matrix, inst.values, inst.gammas);
    CHECK(r.plan.failures.empty());
  }
}
