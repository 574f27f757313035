#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "pdiag/matcore.hpp"
#include "pdiag/spectra.hpp"
#include "random.hpp"

using namespace pdiag;
using fixtures::q;

namespace {

std::vector<Complexd> cvals(std::initializer_list<Complexd> v) { return v; }

double dist(const std::vector<Complexd>& a, const std::vector<Complexd>& b) {
  const auto m = spectra::match_multisets(a, b);
  return m.complete ? m.max_distance : INFINITY;
}

std::vector<Complexd> mixed_spectrum() {
  std::vector<Complexd> out;
  for (auto [re, im] : fixtures::mixed_spectrum_7()) out.emplace_back(re, im);
  return out;
}

}  // namespace

TEST_CASE("eigenvalues of small reference matrices") {
  CHECK(dist(spectra::eigenvalues(DenseMatrix<double>::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}})).values,
             cvals({1, 2, 3})) < 1e-12);
  // (2-t)^3 - (2-t) = (2-t)(1-t)(3-t)
  CHECK(dist(spectra::eigenvalues(DenseMatrix<double>::from_rows({{2, 0, -1}, {0, 2, -1}, {-1, 0, 2}})).values,
             cvals({1, 2, 3})) < 1e-12);
  CHECK(dist(spectra::eigenvalues(DenseMatrix<double>::from_rows({{5.0}})).values, cvals({5})) == 0.0);
  CHECK(dist(spectra::eigenvalues(DenseMatrix<double>::zeros(4)).values, cvals({0, 0, 0, 0})) == 0.0);
}

TEST_CASE("glued 7x7 realization has the mixed spectrum") {
  const auto b = matcore::to_double(fixtures::glued_7x7());
  CHECK(dist(spectra::eigenvalues(b).values, mixed_spectrum()) <= 1e-9);
  CHECK(dist(spectra::eigenvalues_exact(fixtures::glued_7x7()).values, mixed_spectrum()) <= 1e-12);
  CHECK(dist(spectra::eigenvalues_via_charpoly(b).values, mixed_spectrum()) <= 1e-8);
}

TEST_CASE("real input yields a conjugation-closed spectrum") {
  testgen::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 2, 9));
    const auto vals = spectra::eigenvalues(testgen::real_matrix(rng, n)).values;
    std::vector<Complexd> conj;
    for (const auto& z : vals) conj.push_back(std::conj(z));
    CHECK(dist(vals, conj) == 0.0);
  }
}

TEST_CASE("QR and Durand-Kerner on the characteristic polynomial agree for n <= 8") {
  testgen::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 8));
    const auto a = testgen::real_matrix(rng, n);
    CHECK(dist(spectra::eigenvalues(a).values, spectra::eigenvalues_via_charpoly(a).values) < 1e-6);
  }
}

TEST_CASE("exact route recovers repeated and defective eigenvalues") {
  // Jordan block J_3(2) plus a simple eigenvalue -1.
  const auto j = DenseMatrix<Rational>::from_rows({{2, 1, 0, 0}, {0, 2, 1, 0}, {0, 0, 2, 0}, {0, 0, 0, -1}});
  CHECK(dist(spectra::eigenvalues_exact(j).values, cvals({2, 2, 2, -1})) < 1e-12);
  const auto d = DenseMatrix<Rational>::from_rows({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  CHECK(dist(spectra::eigenvalues_exact(d).values, cvals({3, 3, 3})) == 0.0);
}

TEST_CASE("eigenvalues are invariant under permutation similarity") {
  testgen::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 2, 8));
    const auto a = testgen::real_matrix(rng, n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto p = matcore::permute_similarity(a, Permutation(idx));
    CHECK(dist(spectra::eigenvalues(a).values, spectra::eigenvalues(p).values) < 1e-9);
  }
}

TEST_CASE("right and left eigenvectors") {
  const auto g = fixtures::g_block_3x3();
  const auto gd = matcore::to_double(g);

  SUBCASE("constant row sums give exactly e") {
    const auto p = spectra::right_eigenvector(gd, 6.0);
    for (const auto& z : p.vector) CHECK(z == Complexd(1.0, 0.0));
    CHECK(p.residual <= 1e-12);
  }
  SUBCASE("left Perron vector of the 3x3 block, summing to one") {
    const auto t = spectra::left_eigenvector(gd, 6.0);
    CHECK(std::abs(t.vector[0] - to_double(q(25, 73))) < 1e-12);
    CHECK(std::abs(t.vector[1] - to_double(q(24, 73))) < 1e-12);
    CHECK(std::abs(t.vector[2] - to_double(q(24, 73))) < 1e-12);
    CHECK(spectra::left_eigenvector_exact(g, 6) == std::vector<Rational>{q(25, 73), q(24, 73), q(24, 73)});
  }
  SUBCASE("symmetric 2x2") {
    const auto t = spectra::left_eigenvector(DenseMatrix<double>::from_rows({{0, 1}, {1, 0}}), 1.0);
    CHECK(std::abs(t.vector[0] - 0.5) < 1e-12);
    CHECK(std::abs(t.vector[1] - 0.5) < 1e-12);
  }
  SUBCASE("non-eigenvalue is rejected") {
    CHECK_THROWS_AS(spectra::right_eigenvector(gd, 1.0), DomainError);
    CHECK_THROWS_AS(spectra::left_eigenvector_exact(g, 1), DomainError);
  }
  SUBCASE("defective direction cannot meet a tight residual") {
    // Jordan block: the computed eigenvalue is exact here, so the vector is fine;
    // a shifted value misses.
    const auto j = DenseMatrix<double>::from_rows({{1, 1}, {0, 1}});
    CHECK_THROWS_AS(spectra::right_eigenvector(j, 1.0 + 1e-4), DomainError);
  }
}

TEST_CASE("eigenpairs satisfy their reported residual and left/right biorthogonality") {
  testgen::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(testgen::uniform_int(rng, 2, 7));
    const auto a = matcore::to_complex(testgen::real_matrix(rng, n));
    const auto pairs = spectra::eigenpairs(a);
    CHECK(pairs.size() == n);
    for (const auto& p : pairs) {
      const auto av = matcore::apply<Complexd>(a, p.vector);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(av[i] - p.value * p.vector[i]));
      // re-evaluation may differ from the reported value by summation-order rounding
      CHECK(r <= p.residual + 64 * 2.2e-16 * std::max(1.0, matcore::norm_inf(a)));
      CHECK(r <= 1e-8 * std::max(1.0, matcore::norm_inf(a)));
    }
    // t^T v = 0 for distinct eigenvalues
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto t = spectra::left_eigenvector(a, pairs[i].value, 1e-8, spectra::Normalization::max_entry);
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (std::abs(pairs[i].value - pairs[j].value) < 1e-3) continue;
        Complexd s{};
        for (std::size_t k = 0; k < n; ++k) s += t.vector[k] * pairs[j].vector[k];
        CHECK(std::abs(s) < 1e-7);
      }
    }
  }
}

TEST_CASE("all_nonzero_eigenvector") {
  SUBCASE("5x5 integer matrix: dominant real eigenvector") {
    const auto p = spectra::all_nonzero_eigenvector(matcore::to_double(fixtures::integer_5x5()));
    REQUIRE(p.has_value());
    CHECK(std::abs(p->value - Complexd(5197.0 / 524.0)) < 1e-5);
    const auto ref = fixtures::integer_5x5_eigenvector();
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(std::abs(p->vector[i] / p->vector[4] - to_double(ref[i])) < 1e-5);
  }
  SUBCASE("diagonal matrix has none") {
    CHECK_FALSE(spectra::all_nonzero_eigenvector(DenseMatrix<double>::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}))
                    .has_value());
  }
  SUBCASE("constant row sums: e qualifies") {
    const auto p = spectra::all_nonzero_eigenvector(matcore::to_double(fixtures::f_block_5x5()));
    REQUIRE(p.has_value());
    CHECK(std::abs(p->value - 16.0) < 1e-9);
    for (const auto& z : p->vector) CHECK(std::abs(z - 1.0) < 1e-12);
  }
  SUBCASE("scalar matrix is an error") {
    CHECK_THROWS_AS(spectra::all_nonzero_eigenvector(DenseMatrix<double>::identity(3)), DomainError);
  }
}

TEST_CASE("polynomial_roots") {
  // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
  const std::vector<Complexd> c{-6, 11, -6, 1};
  CHECK(dist(spectra::polynomial_roots(c), cvals({1, 2, 3})) < 1e-12);
  // t^2 + 4t + 13
  const std::vector<Complexd> c2{13, 4, 1};
  CHECK(dist(spectra::polynomial_roots(c2), cvals({{-2, 3}, {-2, -3}})) < 1e-12);
}

TEST_CASE("match_multisets pairs greedily by distance") {
  const auto m = spectra::match_multisets(cvals({1, 2, 3}), cvals({3.1, 0.9, 2}));
  CHECK(m.complete);
  CHECK(m.max_distance == doctest::Approx(0.1));
  CHECK_FALSE(spectra::match_multisets(cvals({1, 2}), cvals({1})).complete);
}
