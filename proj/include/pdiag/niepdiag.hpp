#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdiag/matrix.hpp"
#include "pdiag/scalar.hpp"

// Nonnegative matrices with a prescribed spectrum and a prescribed diagonal.
// All constructions run on the exact rational backend.
namespace pdiag::niep {

/// A list lambda_1, ..., lambda_n with a real Perron element. The tail is
/// normalized: reals in descending order, then conjugate pairs by descending
/// real part and ascending |imag|, each x+iy directly followed by x-iy.
struct Spectrum {
  Rational perron{0};
  std::vector<ExactComplex> tail;
  // input_order[k] is the index in the caller's list of the value stored at
  // position k of values() (so input_order[0] locates the Perron element).
  std::vector<std::size_t> input_order;

  std::size_t size() const { return tail.size() + 1; }
  std::vector<ExactComplex> values() const;
  std::vector<Complexd> to_complex() const;
};

/// Picks the largest real entry as Perron element, normalizes the rest and
/// validates conjugate closure and lambda_1 >= |lambda_i|. Throws DomainError.
Spectrum make_spectrum(std::span<const ExactComplex> values);

enum class Membership { F, G_minus_F, outside };
enum class ListTag { SuleimanovaF, SmigocG, Mixed, Outside };

struct ListClass {
  ListTag tag = ListTag::Outside;
  std::vector<Membership> membership;  // one per tail entry
};

/// Re <= 0 and |Re| >= |Im| gives F; Re <= 0 and 3 Re^2 >= Im^2 gives G.
/// Boundaries count as inside.
Membership membership(const ExactComplex& z);
bool in_F(const ExactComplex& z);
bool in_G(const ExactComplex& z);

/// SuleimanovaF when every tail entry is in F (including the empty tail),
/// SmigocG when every entry is in G and none in F, Mixed when every entry is
/// in G with at least one in F and one outside it, Outside otherwise.
ListClass classify(const Spectrum& spectrum);

std::string to_string(ListTag tag);
std::string to_string(Membership m);

/// |sum gamma - sum lambda| <= tol. Throws DimensionError on a length mismatch.
bool check_trace(const Spectrum& spectrum, std::span<const Rational> gammas, const Rational& tol = Rational(0));

struct FeasibilityReport {
  bool bounds = false;    // 0 <= gamma_k <= lambda_1
  bool trace = false;     // sum gamma = sum lambda
  bool e2 = false;        // e2(gamma) >= e2(lambda)
  bool max_gamma = false; // max gamma_k >= Re lambda_2
  bool ok() const { return bounds && trace && e2 && max_gamma; }
  std::vector<std::string> failures() const;
};

/// The four conditions for a nonnegative 3x3 matrix with eigenvalues
/// (lambda1, lambda2, lambda3) and diagonal (g1, g2, g3). lambda2, lambda3
/// must both be real or form a conjugate pair (DomainError otherwise).
FeasibilityReport perfect_feasible(const Rational& lambda1, const ExactComplex& lambda2, const ExactComplex& lambda3,
                                   const std::array<Rational, 3>& gammas);
/// Floating-point variant; every inequality gets `slack`.
FeasibilityReport perfect_feasible(double lambda1, Complexd lambda2, Complexd lambda3,
                                   const std::array<double, 3>& gammas, double slack);

/// Template matrix in CS_{lambda_1} with spectrum {lambda_1} + tail. Tail
/// entries must lie in F with pairs adjacent (x+iy first).
DenseMatrix<Rational> suleimanova_primitive(const Rational& lambda1, std::span<const ExactComplex> tail);

/// Template plus e q^T with q_i = gamma_i - Re lambda_i. Nonnegative, in
/// CS_{lambda_1}, diagonal exactly gamma.
DenseMatrix<Rational> realize_suleimanova(const Rational& lambda1, std::span<const ExactComplex> tail,
                                          std::span<const Rational> gammas);
DenseMatrix<Rational> realize_suleimanova(const Spectrum& spectrum, std::span<const Rational> gammas);

/// [[g1, 0, l1-g1], [l1-g2-p, g2, p], [0, l1-g3, g3]] with
/// p = (e2(gamma) - (2 l1 x + x^2 + y^2)) / (l1 - g3). The pair x+-iy must be
/// in G. g3 == l1 is only possible for the zero pair and yields
/// [[0,0,l1],[l1,0,0],[0,0,l1]].
DenseMatrix<Rational> construct_3x3(const Rational& lambda1, const ExactComplex& pair,
                                    const std::array<Rational, 3>& gammas);

struct GlueResult {
  DenseMatrix<Rational> matrix;
  std::vector<Rational> t;  // left eigenvector of A2 for c, t^T e = 1
};

/// A1 = [[A11, a], [b^T, c]], A2 in CS_c: returns [[A11, a t^T], [e b^T, A2]].
GlueResult smigoc_glue(const DenseMatrix<Rational>& a1, const DenseMatrix<Rational>& a2);

/// Records of the recursive constructions. Level 1 is the outermost split.
struct SmigocTrace {
  std::vector<Rational> bridges;
  std::vector<std::vector<Rational>> glue_t;
};

/// Tail made of conjugate pairs in G (x+iy first). gammas has length
/// 2 * pairs + 1 and must satisfy the trace condition. Throws InfeasibleError
/// with the failing level.
DenseMatrix<Rational> realize_smigoc(const Rational& lambda1, std::span<const ExactComplex> tail,
                                     std::span<const Rational> gammas, SmigocTrace* trace = nullptr);

enum class AssignmentOrder { keep, automatic };

struct PlanOptions {
  AssignmentOrder order = AssignmentOrder::automatic;
  std::uint64_t seed = 0;
  std::size_t exhaustive_limit = 8;   // enumerate every slot assignment up to this n
  std::size_t random_restarts = 256;  // shuffled assignments beyond it
};

struct RealizationPlan {
  ListTag tag = ListTag::Outside;
  std::vector<ExactComplex> head;    // Perron element and the F part
  std::vector<ExactComplex> g_part;  // entries in G but not in F
  std::vector<Rational> bridges;     // outermost first
  // slot_to_position[s] is the index in the caller's diagonal placed at
  // construction slot s.
  std::vector<std::size_t> slot_to_position;
  Permutation final_perm = Permutation::identity(0);
  std::vector<std::vector<Rational>> glue_t;
  std::vector<std::string> failures;  // rejected assignments, with reasons
  std::size_t attempts = 0;
};

struct Realization {
  DenseMatrix<Rational> matrix;
  RealizationPlan plan;
};

/// Nonnegative matrix with spectrum `spectrum` and diagonal `gammas` (in the
/// caller's order) for lists in G. Throws DomainError for Outside lists,
/// negative gammas or a trace mismatch, InfeasibleError when every tried
/// assignment fails.
Realization realize_mixed(const Spectrum& spectrum, std::span<const Rational> gammas, const PlanOptions& options = {});

}  // namespace pdiag::niep
