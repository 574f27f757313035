#include "pdiag/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pdiag/error.hpp"

namespace pdiag::spectra {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Row-major n x n scratch matrix for the QR iteration.
struct Work {
  std::size_t n;
  std::vector<Complexd> a;
  Complexd& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

double abs1(const Complexd& z) { return std::fabs(z.real()) + std::fabs(z.imag()); }

// Parlett-Reinsch balancing with radix 2 (exact scaling, no rounding).
void balance(Work& w) {
  const double radix = 2.0;
  const double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < w.n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < w.n; ++j) {
        if (j == i) continue;
        c += abs1(w(j, i));
        r += abs1(w(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < w.n; ++j) w(i, j) *= g;
        for (std::size_t j = 0; j < w.n; ++j) w(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form.
void hessenberg(Work& w) {
  const std::size_t n = w.n;
  std::vector<Complexd> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(w(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complexd x0 = w(k + 1, k);
    const Complexd phase = std::abs(x0) == 0.0 ? Complexd(1.0, 0.0) : x0 / std::abs(x0);
    const Complexd alpha = -phase * xnorm;
    std::fill(v.begin(), v.end(), Complexd{});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = w(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    if (vnorm == 0.0) continue;
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // A <- (I - 2 v v^H) A
    for (std::size_t j = 0; j < n; ++j) {
      Complexd s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * w(i, j);
      for (std::size_t i = k + 1; i < n; ++i) w(i, j) -= 2.0 * v[i] * s;
    }
    // A <- A (I - 2 v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complexd s{};
      for (std::size_t j = k + 1; j < n; ++j) s += w(i, j) * v[j];
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= 2.0 * s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) w(i, k) = Complexd{};
  }
}

// Single-shift complex QR on a Hessenberg matrix (eigenvalues only).
SpectrumEstimate hessenberg_qr(Work& w) {
  const std::size_t n = w.n;
  std::vector<Complexd> eig(n);
  double hnorm = 0.0;
  for (const auto& z : w.a) hnorm = std::max(hnorm, std::abs(z));
  if (hnorm == 0.0) return {eig, 0.0};

  const std::size_t cap = 100 * n;
  std::size_t sweeps = 0;
  std::size_t its = 0;
  double dropped = 0.0;
  std::vector<double> cs(n);
  std::vector<Complexd> sn(n);

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    std::ptrdiff_t l = hi;
    while (l > 0) {
      double s = std::abs(w(l, l)) + std::abs(w(l - 1, l - 1));
      if (s == 0.0) s = hnorm;
      if (std::abs(w(l, l - 1)) <= kEps * s) {
        dropped = std::max(dropped, std::abs(w(l, l - 1)));
        w(l, l - 1) = Complexd{};
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = w(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (sweeps >= cap) {
      throw ConvergenceError("QR iteration did not converge after " + std::to_string(cap) + " sweeps (" +
                                 std::to_string(n - 1 - hi) + " of " + std::to_string(n) + " eigenvalues deflated)",
                             n - 1 - static_cast<std::size_t>(hi));
    }

    Complexd mu;
    if (its == 10 || its == 20) {
      mu = w(hi, hi) + 0.75 * std::abs(w(hi, hi - 1)) * Complexd(1.0, 0.5);
    } else {
      const Complexd a = w(hi - 1, hi - 1), b = w(hi - 1, hi), c = w(hi, hi - 1), d = w(hi, hi);
      const Complexd half = 0.5 * (a - d);
      const Complexd disc = std::sqrt(half * half + b * c);
      const Complexd r1 = 0.5 * (a + d) + disc;
      const Complexd r2 = 0.5 * (a + d) - disc;
      mu = std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
    }

    for (std::ptrdiff_t k = l; k <= hi; ++k) w(k, k) -= mu;
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      const Complexd a = w(k, k), b = w(k + 1, k);
      const double rho = std::hypot(std::abs(a), std::abs(b));
      double c;
      Complexd s;
      if (rho == 0.0) {
        c = 1.0;
        s = Complexd{};
      } else if (std::abs(a) == 0.0) {
        c = 0.0;
        s = std::conj(b) / rho;
      } else {
        c = std::abs(a) / rho;
        s = (a / std::abs(a)) * std::conj(b) / rho;
      }
      cs[k] = c;
      sn[k] = s;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const Complexd x = w(k, j), y = w(k + 1, j);
        w(k, j) = c * x + s * y;
        w(k + 1, j) = -std::conj(s) * x + c * y;
      }
    }
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      const double c = cs[k];
      const Complexd s = sn[k];
      const std::ptrdiff_t top = std::min(k + 2, hi);
      for (std::ptrdiff_t i = l; i <= top; ++i) {
        const Complexd x = w(i, k), y = w(i, k + 1);
        w(i, k) = c * x + std::conj(s) * y;
        w(i, k + 1) = -s * x + c * y;
      }
    }
    for (std::ptrdiff_t k = l; k <= hi; ++k) w(k, k) += mu;
    ++its;
    ++sweeps;
  }
  return {eig, dropped / hnorm};
}

double spectral_scale(const std::vector<Complexd>& values) {
  double s = 1.0;
  for (const auto& z : values) s = std::max(s, std::abs(z));
  return s;
}

// ---- polynomials over Q, lowest degree first ----

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {Rational(0)};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rational(static_cast<long>(i));
  return d;
}

void make_monic(Poly& p) {
  trim(p);
  const Rational lead = p.back();
  if (lead == 0) return;
  for (auto& c : p) c /= lead;
}

std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
  trim(num);
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {{Rational(0)}, num};
  Poly quot(num.size() - dn, Rational(0));
  for (std::size_t k = num.size(); k-- > dn;) {
    const Rational f = num[k] / den.back();
    quot[k - dn] = f;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= f * den[j];
  }
  num.resize(dn == 0 ? 1 : dn);
  trim(num);
  return {quot, num};
}

bool is_zero_poly(const Poly& p) { return p.size() == 1 && p[0] == 0; }

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!is_zero_poly(b)) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Yun's square-free decomposition: returns (factor, multiplicity) pairs.
std::vector<std::pair<Poly, std::size_t>> squarefree(const Poly& f) {
  std::vector<std::pair<Poly, std::size_t>> out;
  Poly fp = derivative(f);
  Poly a = gcd(f, fp);
  Poly b = divmod(f, a).first;
  Poly c = divmod(fp, a).first;
  Poly d = sub(c, derivative(b));
  std::size_t mult = 1;
  while (b.size() > 1) {
    Poly g = gcd(b, d);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = sub(c, derivative(b));
    if (g.size() > 1) out.emplace_back(g, mult);
    ++mult;
  }
  return out;
}

Complexd horner(std::span<const Complexd> c, Complexd z) {
  Complexd p{};
  for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
  return p;
}

Complexd horner_derivative(std::span<const Complexd> c, Complexd z) {
  Complexd p{};
  for (std::size_t k = c.size(); k-- > 1;) p = p * z + static_cast<double>(k) * c[k];
  return p;
}

// Deterministic, all entries nonzero, real.
std::vector<Complexd> start_vector(std::size_t n) {
  std::vector<Complexd> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.37 * static_cast<double>((i * 7919 + 3) % 13) / 13.0;
  return x;
}

Complexd cdot(std::span<const Complexd> u, std::span<const Complexd> v) {
  Complexd s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

void project_out(std::vector<Complexd>& x, std::span<const std::vector<Complexd>> basis) {
  for (const auto& b : basis) {
    const double bb = std::real(cdot(b, b));
    if (bb == 0.0) continue;
    const Complexd f = cdot(b, x) / bb;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= f * b[i];
  }
}

double max_abs(std::span<const Complexd> x) {
  double m = 0.0;
  for (const auto& z : x) m = std::max(m, std::abs(z));
  return m;
}

double residual_right(const DenseMatrix<Complexd>& a, std::span<const Complexd> x, Complexd lambda) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Complexd s = -lambda * x[i];
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    r = std::max(r, std::abs(s));
  }
  return r;
}

void normalize(std::vector<Complexd>& x, Normalization norm) {
  if (norm == Normalization::unit_sum) {
    Complexd s{};
    double l1 = 0.0;
    for (const auto& z : x) {
      s += z;
      l1 += std::abs(z);
    }
    if (std::abs(s) > 1e-12 * l1) {
      for (auto& z : x) z /= s;
      return;
    }
  }
  std::size_t k = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[k])) k = i;
  const Complexd p = x[k];
  for (auto& z : x) z /= p;
  x[k] = 1.0;
}

// LU with partial pivoting; zero pivots replaced by a tiny multiple of the
// norm so that (A - lambda I) stays solvable at an exact eigenvalue.
struct LU {
  std::size_t n;
  std::vector<Complexd> m;
  std::vector<std::size_t> piv;

  LU(const DenseMatrix<Complexd>& a, Complexd lambda) : n(a.size()), m(a.entries()), piv(a.size()) {
    const double floor = kEps * std::max(1.0, matcore::norm_inf(a));
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= lambda;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
      piv[k] = p;
      if (p != k)
        for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      if (std::abs(m[k * n + k]) < floor) m[k * n + k] = floor;
      for (std::size_t i = k + 1; i < n; ++i) {
        const Complexd f = m[i * n + k] / m[k * n + k];
        m[i * n + k] = f;
        for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
      }
    }
  }

  std::vector<Complexd> solve(std::vector<Complexd> b) const {
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(b[k], b[piv[k]]);
      for (std::size_t i = k + 1; i < n; ++i) b[i] -= m[i * n + k] * b[k];
    }
    for (std::size_t k = n; k-- > 0;) {
      for (std::size_t j = k + 1; j < n; ++j) b[k] -= m[k * n + j] * b[j];
      b[k] /= m[k * n + k];
    }
    return b;
  }
};

}  // namespace

SpectrumEstimate eigenvalues(const DenseMatrix<Complexd>& a, double tol) {
  Work w{a.size(), a.entries()};
  for (const auto& z : w.a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("eigenvalues: non-finite entry");
  balance(w);
  hessenberg(w);
  SpectrumEstimate est = hessenberg_qr(w);
  if (est.residual > tol) {
    throw ConvergenceError("eigenvalues: backward error " + std::to_string(est.residual) + " exceeds tolerance",
                           a.size());
  }
  return est;
}

SpectrumEstimate eigenvalues(const DenseMatrix<double>& a, double tol) {
  SpectrumEstimate est = eigenvalues(matcore::to_complex(a), tol);
  est.values = symmetrize_conjugates(std::move(est.values));
  return est;
}

std::vector<Complexd> polynomial_roots(std::span<const Complexd> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && std::abs(coeffs[deg - 1]) == 0.0) --deg;
  if (deg <= 1) return {};
  std::vector<Complexd> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(deg));
  const Complexd lead = c.back();
  for (auto& z : c) z /= lead;
  const std::size_t n = deg - 1;
  if (n == 1) return {-c[0]};

  // Fujiwara-style radius bound for the initial circle.
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(n - k)));
  radius = std::max(2.0 * radius, 1e-3);

  std::vector<Complexd> z(n);
  const Complexd seed(0.4, 0.9);
  Complexd w = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    w *= seed;
    z[k] = radius * w / std::abs(w) * (0.5 + 0.5 * static_cast<double>(k + 1) / static_cast<double>(n));
  }

  for (int iter = 0; iter < 2000; ++iter) {
    double step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Complexd denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) denom *= (z[k] - z[j]);
      if (std::abs(denom) == 0.0) denom = kEps;
      const Complexd delta = horner(c, z[k]) / denom;
      z[k] -= delta;
      step = std::max(step, std::abs(delta) / std::max(1.0, std::abs(z[k])));
    }
    if (step < 1e-15) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      const Complexd d = horner_derivative(c, r);
      if (std::abs(d) == 0.0) break;
      const Complexd next = r - horner(c, r) / d;
      if (std::abs(horner(c, next)) >= std::abs(horner(c, r))) break;
      r = next;
    }
  }
  return z;
}

SpectrumEstimate eigenvalues_via_charpoly(const DenseMatrix<double>& a) {
  const std::vector<double> p = characteristic_polynomial(a);
  std::vector<Complexd> c(p.begin(), p.end());
  std::vector<Complexd> roots = polynomial_roots(c);
  if (a.size() == 1) roots = {Complexd(a(0, 0), 0.0)};
  double res = 0.0;
  for (const auto& r : roots) res = std::max(res, std::abs(horner(c, r)));
  return {symmetrize_conjugates(std::move(roots)), res};
}

SpectrumEstimate eigenvalues_exact(const DenseMatrix<Rational>& a) {
  const std::vector<Rational> p = characteristic_polynomial(a);
  SpectrumEstimate est;
  for (const auto& [factor, mult] : squarefree(p)) {
    std::vector<Complexd> c;
    c.reserve(factor.size());
    for (const auto& q : factor) c.emplace_back(to_double(q), 0.0);
    std::vector<Complexd> roots;
    if (factor.size() == 2) {
      roots.emplace_back(to_double(Rational(-factor[0] / factor[1])), 0.0);
    } else {
      roots = polynomial_roots(c);
      for (const auto& r : roots) est.residual = std::max(est.residual, std::abs(horner(c, r)));
    }
    for (std::size_t k = 0; k < mult; ++k) est.values.insert(est.values.end(), roots.begin(), roots.end());
  }
  est.values = symmetrize_conjugates(std::move(est.values));
  return est;
}

SpectrumEstimate spectrum_of(const DenseMatrix<Rational>& a) {
  if (a.size() <= 24) return eigenvalues_exact(a);
  return eigenvalues(matcore::to_double(a));
}

SpectrumEstimate spectrum_of(const DenseMatrix<double>& a) { return eigenvalues(a); }

SpectrumEstimate spectrum_of(const DenseMatrix<Complexd>& a) { return eigenvalues(a); }

std::vector<Complexd> symmetrize_conjugates(std::vector<Complexd> values) {
  const double scale = spectral_scale(values);
  const double real_tol = 1e-12 * scale;
  const double pair_tol = 1e-6 * scale;
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::fabs(values[i].imag()) <= real_tol) {
      values[i] = {values[i].real(), 0.0};
    } else if (values[i].imag() > 0) {
      pos.push_back(i);
    } else {
      neg.push_back(i);
    }
  }
  struct Cand {
    double d;
    std::size_t p, q;
  };
  std::vector<Cand> cands;
  for (std::size_t p : pos)
    for (std::size_t q : neg) {
      const double d = std::abs(values[p] - std::conj(values[q]));
      if (d <= pair_tol) cands.push_back({d, p, q});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
  std::vector<bool> used(values.size(), false);
  for (const auto& c : cands) {
    if (used[c.p] || used[c.q]) continue;
    used[c.p] = used[c.q] = true;
    const Complexd avg = 0.5 * (values[c.p] + std::conj(values[c.q]));
    values[c.p] = avg;
    values[c.q] = std::conj(avg);
  }
  return values;
}

Matching match_multisets(std::span<const Complexd> a, std::span<const Complexd> b) {
  struct Cand {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cands.push_back({std::abs(a[i] - b[j]), i, j});
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
  std::vector<bool> ua(a.size(), false), ub(b.size(), false);
  Matching m;
  m.complete = a.size() == b.size();
  for (const auto& c : cands) {
    if (ua[c.i] || ub[c.j]) continue;
    ua[c.i] = ub[c.j] = true;
    m.pairs.emplace_back(c.i, c.j);
    m.max_distance = std::max(m.max_distance, c.d);
  }
  return m;
}

EigenPair right_eigenvector(const DenseMatrix<Complexd>& a, Complexd lambda, double tol, Normalization norm,
                            std::span<const std::vector<Complexd>> avoid) {
  const std::size_t n = a.size();
  const double scale = std::max(1.0, matcore::norm_inf(a));
  const double bound = tol * scale;

  if (avoid.empty()) {
    if (auto alpha = matcore::constant_row_sum(a, 1e-12 * scale); alpha && std::abs(*alpha - lambda) <= bound) {
      std::vector<Complexd> e(n, Complexd(1.0, 0.0));
      const double r = residual_right(a, e, lambda);
      if (norm == Normalization::unit_sum)
        for (auto& z : e) z /= static_cast<double>(n);
      return {lambda, e, Side::right, norm == Normalization::unit_sum ? r / static_cast<double>(n) : r};
    }
  }

  const LU lu(a, lambda);
  std::vector<Complexd> x = start_vector(n);
  project_out(x, avoid);
  if (max_abs(x) == 0.0) x[0] = 1.0;
  double r = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 50; ++it) {
    std::vector<Complexd> y = lu.solve(x);
    project_out(y, avoid);
    const double m = max_abs(y);
    if (m == 0.0 || !std::isfinite(m)) break;
    for (auto& z : y) z /= m;
    x = std::move(y);
    r = residual_right(a, x, lambda);
    if (r <= bound * 1e-3) break;
  }
  normalize(x, Normalization::max_entry);
  r = residual_right(a, x, lambda);
  if (!(r <= bound)) {
    throw DomainError("no eigenvector for lambda = (" + std::to_string(lambda.real()) + ", " +
                      std::to_string(lambda.imag()) + "): residual " + std::to_string(r) + " exceeds " +
                      std::to_string(bound));
  }
  if (norm == Normalization::unit_sum) {
    normalize(x, norm);
    r = residual_right(a, x, lambda);
  }
  return {lambda, x, Side::right, r};
}

EigenPair right_eigenvector(const DenseMatrix<double>& a, Complexd lambda, double tol, Normalization norm) {
  return right_eigenvector(matcore::to_complex(a), lambda, tol, norm);
}

EigenPair left_eigenvector(const DenseMatrix<Complexd>& a, Complexd lambda, double tol, Normalization norm) {
  const DenseMatrix<Complexd> at = matcore::transpose(a);
  const LU lu(at, lambda);
  const std::size_t n = a.size();
  const double bound = tol * std::max(1.0, matcore::norm_inf(a));
  std::vector<Complexd> x = start_vector(n);
  double r = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 50; ++it) {
    std::vector<Complexd> y = lu.solve(x);
    const double m = max_abs(y);
    if (m == 0.0 || !std::isfinite(m)) break;
    for (auto& z : y) z /= m;
    x = std::move(y);
    r = residual_right(at, x, lambda);
    if (r <= bound * 1e-3) break;
  }
  normalize(x, Normalization::max_entry);
  r = residual_right(at, x, lambda);
  if (!(r <= bound)) {
    throw DomainError("no left eigenvector for lambda = (" + std::to_string(lambda.real()) + ", " +
                      std::to_string(lambda.imag()) + "): residual " + std::to_string(r));
  }
  normalize(x, norm);
  return {lambda, x, Side::left, residual_right(at, x, lambda)};
}

EigenPair left_eigenvector(const DenseMatrix<double>& a, Complexd lambda, double tol, Normalization norm) {
  return left_eigenvector(matcore::to_complex(a), lambda, tol, norm);
}

std::vector<Rational> left_eigenvector_exact(const DenseMatrix<Rational>& a, const Rational& c) {
  const auto basis = matcore::kernel_basis(matcore::shift(matcore::transpose(a), c));
  if (basis.empty()) throw DomainError("left_eigenvector_exact: " + to_string(c) + " is not an eigenvalue");
  for (const auto& t : basis) {
    Rational s(0);
    for (const auto& x : t) s += x;
    if (s == 0) continue;
    std::vector<Rational> out;
    out.reserve(t.size());
    for (const auto& x : t) out.emplace_back(x / s);
    return out;
  }
  throw DomainError("left_eigenvector_exact: every left eigenvector for " + to_string(c) + " satisfies t^T e = 0");
}

bool has_all_nonzero_entries(std::span<const Complexd> x, double zero_tol) {
  const double m = max_abs(x);
  if (m == 0.0) return false;
  for (const auto& z : x)
    if (std::abs(z) <= zero_tol * m) return false;
  return true;
}

std::vector<EigenPair> eigenpairs(const DenseMatrix<Complexd>& a, double tol) {
  std::vector<Complexd> values = eigenvalues(a).values;
  const double scale = std::max(1.0, matcore::norm_inf(a));
  std::stable_sort(values.begin(), values.end(), [](const Complexd& x, const Complexd& y) {
    const double mx = std::abs(x), my = std::abs(y);
    if (std::fabs(mx - my) > 1e-12 * std::max(1.0, mx)) return mx > my;
    if (std::fabs(x.imag()) != std::fabs(y.imag())) return std::fabs(x.imag()) < std::fabs(y.imag());
    return x.real() > y.real();
  });

  // Cluster numerically equal eigenvalues; one cluster per distinct value.
  std::vector<std::pair<Complexd, std::size_t>> clusters;
  for (const auto& v : values) {
    bool merged = false;
    for (auto& [c, count] : clusters) {
      if (std::abs(c - v) <= 1e-6 * scale) {
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(v, 1);
  }

  std::vector<EigenPair> out;
  for (const auto& [lambda, mult] : clusters) {
    std::vector<std::vector<Complexd>> found;
    for (std::size_t k = 0; k < mult; ++k) {
      try {
        EigenPair p = right_eigenvector(a, lambda, tol, Normalization::max_entry, found);
        found.push_back(p.vector);
        out.push_back(std::move(p));
      } catch (const DomainError&) {
        break;
      }
    }
  }
  return out;
}

std::optional<EigenPair> all_nonzero_eigenvector(const DenseMatrix<Complexd>& a, double zero_tol) {
  if (matcore::is_scalar_matrix(a)) throw DomainError("all_nonzero_eigenvector: matrix is scalar");
  for (auto& p : eigenpairs(a)) {
    if (has_all_nonzero_entries(p.vector, zero_tol)) return std::move(p);
  }
  return std::nullopt;
}

std::optional<EigenPair> all_nonzero_eigenvector(const DenseMatrix<double>& a, double zero_tol) {
  return all_nonzero_eigenvector(matcore::to_complex(a), zero_tol);
}

}  // namespace pdiag::spectra
