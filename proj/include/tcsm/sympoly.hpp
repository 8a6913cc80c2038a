#pragma once

// Exact symbolic machinery for the collective excitations: the generalized
// Laplace operator D+, constraint systems over monomial symmetric
// polynomials, similarity series, radial Laguerre factors and degeneracy
// counting. Everything in this header is exact rational arithmetic; there
// is no floating point on any code path.

#include <optional>
#include <string>
#include <vector>

#include "tcsm/model.hpp"
#include "tcsm/partition.hpp"
#include "tcsm/polynomial.hpp"
#include "tcsm/rational.hpp"

namespace tcsm {

// E0 in units of hbar*omega as an exact rational, for rational lambda.
inline Rational ground_energy_rational(int n, const Rational& lambda, int range) {
  Rational pairs2 = Rational(range) * Rational(2L * n - range - 1);  // = 2 * pair count
  return (Rational(n) + lambda * pairs2) / 2;
}

inline Rational relative_ground_energy_rational(int n, const Rational& lambda, int range) {
  return ground_energy_rational(n, lambda, range) - Rational(1, 2);
}

// Plain Laplacian sum_i d^2/dx_i^2.
inline Poly laplacian(const Poly& f) {
  Poly out(f.nvars());
  for (int v = 0; v < f.nvars(); ++v) out += f.derivative(v).derivative(v);
  return out;
}

// Drift part of D+ without its 2*lambda prefactor:
//   sum_{pairs (i,j)} [(d_i - d_j) f] / (x_i - x_j),
// each pair divided exactly. A nonzero remainder in any pair makes the
// result non-polynomial; the factors x_i - x_j are distinct irreducibles,
// so per-pair divisibility is equivalent to divisibility of the sum.
inline std::optional<Poly> dplus_drift(const Poly& f, const PairList& pairs) {
  Poly out(f.nvars());
  for (const auto& [i, j] : pairs) {
    Poly g = f.derivative(i) - f.derivative(j);
    auto q = g.divide_by_difference(i, j);
    if (!q) return std::nullopt;
    out += *q;
  }
  return out;
}

// D+ f = Laplacian f + 2*lambda * drift f at an exact rational lambda.
inline std::optional<Poly> apply_dplus(int n, const Rational& lambda, int range,
                                       const Poly& f) {
  ModelParams p{n, 0.0, range};
  PairList pairs = enumerate_interactions(p).pairs;
  Poly out = laplacian(f);
  if (sgn(lambda) != 0) {
    auto drift = dplus_drift(f, pairs);
    if (!drift) return std::nullopt;
    out += drift->scaled(2 * lambda);
  }
  return out;
}

// Euler operator K = sum_i x_i d/dx_i; multiplies each monomial by its degree.
inline Poly euler_operator(const Poly& f) {
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) out.add_term(m, c * m.degree());
  return out;
}

// rho^2 = sum_i x_i^2 as a polynomial.
inline Poly rho_squared(int nvars) {
  Poly out(nvars);
  for (int v = 0; v < nvars; ++v) out += Poly::variable(nvars, v, 2);
  return out;
}

enum class ConstraintRegime { Truncated, FullRange };  // r < N-1 vs r = N-1

struct ConstraintSolution {
  int n = 0;
  int range = 0;
  Rational lambda;
  int k = 0;
  ConstraintRegime regime = ConstraintRegime::Truncated;
  std::vector<Partition> parts;            // partitions of k, reverse-lex
  std::vector<std::vector<Rational>> basis;  // nullspace vectors over parts
  int dimension() const { return static_cast<int>(basis.size()); }

  Rational coeff(std::size_t vec, const Partition& alpha) const {
    for (std::size_t c = 0; c < parts.size(); ++c)
      if (parts[c] == alpha) return basis[vec][c];
    throw Error("partition not present in constraint solution");
  }

  Poly polynomial(std::size_t vec) const {
    Poly out(n);
    for (std::size_t c = 0; c < parts.size(); ++c)
      if (sgn(basis[vec][c]) != 0)
        out += monomial_symmetric(parts[c], n).scaled(basis[vec][c]);
    return out;
  }
};

// Constraint matrix for D+ (sum_alpha c_alpha m_alpha) = 0, columns indexed
// by partitions of k. For r < N-1 the image of a symmetric polynomial under
// D+ is generally not symmetric (neighbor counts differ by site), so rows
// run over every raw monomial that appears in any column image.
inline std::vector<std::vector<Rational>> laplace_constraint_matrix(
    int n, const Rational& lambda, int range, int k) {
  std::vector<Partition> cols = partitions(k, n);
  ModelParams p{n, 0.0, range};
  PairList pairs = enumerate_interactions(p).pairs;
  std::vector<Poly> images;
  images.reserve(cols.size());
  std::map<Monomial, std::size_t> row_index;
  for (const auto& alpha : cols) {
    Poly ma = monomial_symmetric(alpha, n);
    Poly image = laplacian(ma);
    auto drift = dplus_drift(ma, pairs);
    if (!drift) throw Error("drift of a symmetric polynomial must be polynomial");
    image += drift->scaled(2 * lambda);
    for (const auto& [mono, coef] : image.terms())
      row_index.emplace(mono, row_index.size());
    images.push_back(std::move(image));
  }
  std::vector<std::vector<Rational>> m(row_index.size(),
                                       std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [mono, coef] : images[c].terms())
      m[row_index.at(mono)][c] = coef;
  return m;
}

namespace detail {

// Nullspace of an exact rational matrix by Gauss-Jordan elimination.
// Columns are taken in the given order; each basis vector is normalized so
// its first nonzero entry (in column order) equals 1.
inline std::vector<std::vector<Rational>> nullspace(
    std::vector<std::vector<Rational>> m, std::size_t ncols) {
  std::vector<int> pivot_of_col(ncols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < ncols; ++c) m[row][c] *= inv;
    for (std::size_t rr = 0; rr < m.size(); ++rr) {
      if (rr == row || sgn(m[rr][col]) == 0) continue;
      Rational f = m[rr][col];
      for (std::size_t c = col; c < ncols; ++c) m[rr][c] -= f * m[row][c];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[free_col] = 1;
    for (std::size_t col = 0; col < ncols; ++col) {
      int pr = pivot_of_col[col];
      if (pr >= 0) v[col] = -m[pr][free_col];
    }
    // normalize on the first nonzero coordinate in column order
    for (std::size_t c = 0; c < ncols; ++c) {
      if (sgn(v[c]) != 0) {
        Rational inv = 1 / v[c];
        for (auto& x : v) x *= inv;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Solves D+ P_k = 0 over P_k = sum c_alpha m_alpha, |alpha| = k, l(alpha) <= N.
// Valid for 1 <= k <= N; the general constraints for k > N depend on the
// excluded partitions of length > N and are deliberately not derived here.
inline ConstraintSolution laplace_constraints(int n, const Rational& lambda,
                                              int range, int k) {
  if (k < 1 || k > n) {
    throw OutOfRegime("constraint systems are provided for 1 <= k <= N only, got k = " +
                      std::to_string(k) + ", N = " + std::to_string(n));
  }
  ConstraintSolution sol;
  sol.n = n;
  sol.range = range;
  sol.lambda = lambda;
  sol.k = k;
  sol.regime = (range == n - 1) ? ConstraintRegime::FullRange
                                : ConstraintRegime::Truncated;
  sol.parts = partitions(k, n);
  auto matrix = laplace_constraint_matrix(n, lambda, range, k);
  sol.basis = detail::nullspace(std::move(matrix), sol.parts.size());
  return sol;
}

// Phi = exp(-D+/(4*wtilde)) f as a terminating series; D+ lowers the degree
// by two each time. Returns nullopt when any exact division fails, which
// flags the seed f as a non-normalizable candidate.
inline std::optional<Poly> similarity_series(int n, const Rational& lambda,
                                             int range, const Poly& f) {
  Poly result = f;
  Poly term = f;
  Rational factor(1);
  long j = 0;
  while (!term.is_zero()) {
    auto next = apply_dplus(n, lambda, range, term);
    if (!next) return std::nullopt;
    term = std::move(*next);
    ++j;
    factor *= Rational(-1, 4 * j);  // accumulate (-1/4)^j / j!  (wtilde = 1)
    result += term.scaled(factor);
  }
  return result;
}

// Exact check of the lowering relation
//   D+/(4 wtilde) [rho^(2n_rad) P_k] = n_rad (E0 + k - 1 + n_rad) rho^(2(n_rad-1)) P_k
// for a P_k satisfying the Laplace equation (wtilde = 1 units).
inline bool recurrence_check(int n, const Rational& lambda, int range, int k,
                             int n_rad, const Poly& pk) {
  auto residual = apply_dplus(n, lambda, range, pk);
  if (!residual || !residual->is_zero())
    throw ConstraintViolation("P_k does not satisfy the generalized Laplace equation");
  Poly rho2 = rho_squared(n);
  Poly lhs_arg = pk;
  for (int t = 0; t < n_rad; ++t) lhs_arg = lhs_arg * rho2;
  auto lhs_raw = apply_dplus(n, lambda, range, lhs_arg);
  if (!lhs_raw) return false;
  Poly lhs = lhs_raw->scaled(Rational(1, 4));
  Rational nu = ground_energy_rational(n, lambda, range) + Rational(k - 1);
  Poly rhs = pk.scaled(Rational(n_rad) * (nu + Rational(n_rad)));
  for (int t = 0; t < n_rad - 1; ++t) rhs = rhs * rho2;
  if (n_rad == 0) rhs = Poly(n);  // n_rad = 0: both sides vanish
  return lhs == rhs;
}

// Generalized Laguerre polynomial L_n^nu as exact coefficients of u^m,
// m = 0..n. The generalized binomial is a falling-factorial product; no
// Gamma function is evaluated.
inline std::vector<Rational> laguerre_coefficients(int n, const Rational& nu) {
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (int m = 0; m <= n; ++m) {
    // binom(nu + n, n - m) = prod_{t=0}^{n-m-1} (nu + n - t) / (n - m)!
    Rational binom(1);
    for (int t = 0; t < n - m; ++t) binom *= (nu + Rational(n - t)) / Rational(t + 1);
    Rational mfact(1);
    for (int t = 2; t <= m; ++t) mfact *= t;
    coeffs[m] = binom * Rational((m % 2 == 0) ? 1 : -1) / mfact;
  }
  return coeffs;
}

inline double radial_laguerre(int n, double nu, double u) {
  // Horner on the explicit sum; n stays small in this model family.
  std::vector<double> c(n + 1);
  for (int m = 0; m <= n; ++m) {
    double binom = 1.0;
    for (int t = 0; t < n - m; ++t) binom *= (nu + n - t) / (t + 1);
    double mfact = 1.0;
    for (int t = 2; t <= m; ++t) mfact *= t;
    c[m] = binom * ((m % 2 == 0) ? 1.0 : -1.0) / mfact;
  }
  double acc = 0.0;
  for (int m = n; m >= 0; --m) acc = acc * u + c[m];
  return acc;
}

struct DegeneracyResult {
  long value = 0;
  bool verified_regime = true;  // s <= N; above that the count is unverified
};

// Level degeneracy of the s-th excitation manifold within the P_k * Laguerre
// family: s/2+1 (even) or (s+1)/2 (odd) for r < N-1, and M(s) for r = N-1.
inline DegeneracyResult degeneracy(const ModelParams& p, int s) {
  if (s < 0) throw OutOfRegime("s must be nonnegative");
  DegeneracyResult res;
  res.verified_regime = (s <= p.n);
  if (p.range == p.n - 1) {
    res.value = partition_count(s, p.n);
  } else {
    res.value = (s % 2 == 0) ? s / 2 + 1 : (s + 1) / 2;
  }
  return res;
}

// Telescoping identity sum_{2n+k=s} [M(k) - M(k-2)] = M(s).
inline bool degeneracy_telescoping_holds(int s, int n) {
  long total = 0;
  for (int k = s; k >= 0; k -= 2)
    total += partition_count(k, n) - partition_count(k - 2, n);
  return total == partition_count(s, n);
}

}  // namespace tcsm
