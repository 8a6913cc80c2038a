#pragma once

// Exact evaluation of the TCSM ground and excited wavefunctions, their
// analytic derivatives, the potential and the local energy.
//
// The unsymmetrized ground state lives on the ordered sector
// x_1 > x_2 > ... > x_N:
//   Psi_0 = exp(-rho^2/2) * prod_{|i-j|<=r} (x_i - x_j)^lambda.
// The normalization constant is never computed; every estimator downstream
// is a ratio. The symmetrized (fluid) wavefunction is evaluated by sorting
// the configuration into the sector, with pair factors |x_i - x_j|^lambda.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tcsm/errors.hpp"
#include "tcsm/model.hpp"
#include "tcsm/sympoly.hpp"

namespace tcsm {

// Pairwise gaps below this are treated as coincident: |Psi|^2 vanishes there
// for lambda > 0 and the potential diverges, so the set is excluded rather
// than regularized.
inline constexpr double kCoincidenceTol = 1e-12;

namespace detail {

inline void check_sector(const ModelParams& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.n)
    throw Error("configuration size does not match N");
  for (int i = 0; i + 1 < p.n; ++i) {
    double gap = x[i] - x[i + 1];
    if (gap < 0.0) throw Error("configuration is not strictly descending");
    if (gap < kCoincidenceTol)
      throw CoincidentCoordinates("gap between coordinates " + std::to_string(i + 1) +
                                  " and " + std::to_string(i + 2) + " is below 1e-12");
  }
}

// ln|phi * varphi| at a descending configuration; -inf when any pairwise
// gap is below the coincidence tolerance (checked for every adjacent pair,
// not only interacting ones). No validation, for hot loops.
inline double log_amplitude_sorted(const ModelParams& p, const double* x) noexcept {
  for (int i = 0; i + 1 < p.n; ++i)
    if (x[i] - x[i + 1] < kCoincidenceTol)
      return -std::numeric_limits<double>::infinity();
  double gauss = 0.0;
  for (int i = 0; i < p.n; ++i) gauss += x[i] * x[i];
  double logpairs = 0.0;
  for (int i = 0; i < p.n; ++i) {
    int jmax = std::min(p.n - 1, i + p.range);
    for (int j = i + 1; j <= jmax; ++j) logpairs += std::log(x[i] - x[j]);
  }
  return -0.5 * gauss + p.lambda * logpairs;
}

}  // namespace detail

// ln|Psi_0| up to the (never computed) normalization constant.
inline double log_amplitude(const ModelParams& p, std::span<const double> x) {
  detail::check_sector(p, x);
  return detail::log_amplitude_sorted(p, x.data());
}

struct LogDerivatives {
  std::vector<double> gradient;  // d_i ln Psi_0
  double laplacian_sum = 0.0;    // sum_i d_i^2 ln Psi_0
};

inline LogDerivatives derivatives_log(const ModelParams& p, std::span<const double> x) {
  detail::check_sector(p, x);
  LogDerivatives out;
  out.gradient.assign(p.n, 0.0);
  for (int i = 0; i < p.n; ++i) out.gradient[i] = -x[i];
  out.laplacian_sum = -p.n;
  for (int i = 0; i < p.n; ++i) {
    int jmax = std::min(p.n - 1, i + p.range);
    for (int j = i + 1; j <= jmax; ++j) {
      double inv = 1.0 / (x[i] - x[j]);
      out.gradient[i] += p.lambda * inv;
      out.gradient[j] -= p.lambda * inv;
      out.laplacian_sum -= 2.0 * p.lambda * inv * inv;
    }
  }
  return out;
}

// V(x) = rho^2/2 + lambda(lambda-1) sum_pairs 1/(x_i-x_j)^2 + lambda^2 * T3.
// The three-body term T3 is accumulated over far triples only; summing the
// dot-product form over every admissible center configuration gives the
// same value (see three_body_identity), the near-triple contributions
// cancel three at a time.
inline double potential_energy(const ModelParams& p, std::span<const double> x) {
  detail::check_sector(p, x);
  double v = 0.0;
  for (int i = 0; i < p.n; ++i) v += 0.5 * x[i] * x[i];
  for (int i = 0; i < p.n; ++i) {
    int jmax = std::min(p.n - 1, i + p.range);
    for (int j = i + 1; j <= jmax; ++j) {
      double inv = 1.0 / (x[i] - x[j]);
      v += p.lambda * (p.lambda - 1.0) * inv * inv;
    }
  }
  if (p.range >= 1 && p.n >= 3) {
    double t3 = 0.0;
    for (int i = 0; i < p.n; ++i)
      for (int j = i + 1; j <= std::min(p.n - 1, i + p.range); ++j)
        for (int k = j + 1; k <= std::min(p.n - 1, j + p.range); ++k)
          if (k - i > p.range) t3 -= 1.0 / ((x[i] - x[j]) * (x[j] - x[k]));
    v += p.lambda * p.lambda * t3;
  }
  return v;
}

struct ThreeBodyIdentity {
  double lhs = 0.0;  // dot-product form, summed over all center choices
  double rhs = 0.0;  // far-triple form, -sum 1/(|x_i-x_j||x_j-x_k|)
};

// The three-body rewrite: on the sector both routes agree and are <= 0.
inline ThreeBodyIdentity three_body_identity(const ModelParams& p,
                                             std::span<const double> x) {
  detail::check_sector(p, x);
  ThreeBodyIdentity out;
  // every (center c; unordered pair {a,b} of distinct index-neighbors of c)
  for (int c = 0; c < p.n; ++c) {
    for (int a = 0; a < p.n; ++a) {
      if (a == c || std::abs(a - c) > p.range) continue;
      for (int b = a + 1; b < p.n; ++b) {
        if (b == c || std::abs(b - c) > p.range) continue;
        double rca = x[c] - x[a];
        double rcb = x[c] - x[b];
        out.lhs += (rca * rcb) / ((rca * rca) * (rcb * rcb));
      }
    }
  }
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j <= std::min(p.n - 1, i + p.range); ++j)
      for (int k = j + 1; k <= std::min(p.n - 1, j + p.range); ++k)
        if (k - i > p.range)
          out.rhs -= 1.0 / (std::abs(x[i] - x[j]) * std::abs(x[j] - x[k]));
  return out;
}

// Local energy E_L = -(1/2)[sum_i d_i^2 ln Psi + |grad ln Psi|^2] + V.
// Constant and equal to E0 for the exact ground state; this is the primary
// runtime oracle for the Hamiltonian implementation.
inline double local_energy(const ModelParams& p, std::span<const double> x) {
  LogDerivatives d = derivatives_log(p, x);
  double grad2 = 0.0;
  for (double g : d.gradient) grad2 += g * g;
  return -0.5 * (d.laplacian_sum + grad2) + potential_energy(p, x);
}

// Symmetrized ground-state value at an arbitrary configuration: sort into
// the sector and evaluate with |x_i - x_j|^lambda pair factors. Sector
// supports are disjoint, so this equals the symmetrized wavefunction up to
// a constant absorbed into normalization.
inline double eval_symmetrized(const ModelParams& p, std::span<const double> y) {
  std::vector<double> x(y.begin(), y.end());
  std::sort(x.begin(), x.end(), std::greater<>());
  detail::check_sector(p, x);
  return std::exp(detail::log_amplitude_sorted(p, x.data()));
}

// ---------------------------------------------------------------------------
// Excited states Psi_{n,k} = Psi_0 * L_n^nu(rho^2) * P_k(x).

struct ExcitedLabel {
  int n_radial = 0;
  int k_degree = 0;
  double nu = 0.0;              // E0 + k - 1 (hbar*omega units)
  Poly p_poly;                  // exact P_k, constraint-validated
  std::vector<Poly> p_grad;     // d_i P_k
  Poly p_lap;                   // Laplacian of P_k
  std::vector<double> lag;      // L_n^nu coefficients of u^m
  std::vector<double> lag_d1;   // dL/du coefficients
  std::vector<double> lag_d2;   // d2L/du2 coefficients

  int s() const { return 2 * n_radial + k_degree; }
};

namespace detail {

inline ExcitedLabel finish_label(const ModelParams& p, int n_rad, int k, Poly pk,
                                 const Rational& lambda_exact) {
  ExcitedLabel label;
  label.n_radial = n_rad;
  label.k_degree = k;
  label.p_poly = std::move(pk);
  for (int v = 0; v < p.n; ++v) label.p_grad.push_back(label.p_poly.derivative(v));
  label.p_lap = laplacian(label.p_poly);
  Rational nu_exact = ground_energy_rational(p.n, lambda_exact, p.range) + Rational(k - 1);
  label.nu = to_double(nu_exact);
  auto coeffs = laguerre_coefficients(n_rad, nu_exact);
  for (const auto& c : coeffs) label.lag.push_back(to_double(c));
  for (std::size_t m = 1; m < label.lag.size(); ++m)
    label.lag_d1.push_back(label.lag[m] * static_cast<double>(m));
  for (std::size_t m = 1; m < label.lag_d1.size(); ++m)
    label.lag_d2.push_back(label.lag_d1[m] * static_cast<double>(m));
  return label;
}

inline double eval_poly_coeffs(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * u + c[m];
  return acc;
}

}  // namespace detail

// Builds the label for quantum numbers (n, k) by solving the Laplace
// constraint system. For r = N-1 and k >= 3 the solution space can have
// dimension > 1; `branch` selects a nullspace basis vector.
inline ExcitedLabel make_excited_label(const ModelParams& p, int n_rad, int k,
                                       int branch = 0) {
  if (n_rad < 0 || k < 0) throw InvalidLabel("quantum numbers must be nonnegative");
  Rational lambda_exact(p.lambda);  // exact binary-float value of lambda
  if (k == 0)
    return detail::finish_label(p, n_rad, k, Poly::constant(p.n, 1), lambda_exact);
  ConstraintSolution sol = laplace_constraints(p.n, lambda_exact, p.range, k);
  if (branch < 0 || branch >= sol.dimension())
    throw InvalidLabel("branch " + std::to_string(branch) + " out of range, dimension is " +
                       std::to_string(sol.dimension()));
  return detail::finish_label(p, n_rad, k, sol.polynomial(branch), lambda_exact);
}

// Label from explicit coefficients; rejects vectors that fail the exact
// constraint residual check D+ P = 0.
inline ExcitedLabel make_excited_label_from_coefficients(
    const ModelParams& p, int n_rad, int k,
    const std::vector<std::pair<Partition, Rational>>& coeffs) {
  Poly pk(p.n);
  for (const auto& [alpha, c] : coeffs) {
    if (weight(alpha) != k) throw InvalidLabel("partition weight differs from k");
    pk += monomial_symmetric(alpha, p.n).scaled(c);
  }
  Rational lambda_exact(p.lambda);
  auto residual = apply_dplus(p.n, lambda_exact, p.range, pk);
  if (!residual || !residual->is_zero())
    throw InvalidLabel("coefficients do not satisfy the generalized Laplace equation");
  return detail::finish_label(p, n_rad, k, std::move(pk), lambda_exact);
}

// Psi_{n,k} at a sector configuration (unnormalized, signed).
inline double eval_excited(const ModelParams& p, const ExcitedLabel& label,
                           std::span<const double> x) {
  detail::check_sector(p, x);
  double u = 0.0;
  for (double xi : x) u += xi * xi;
  double lag = detail::eval_poly_coeffs(label.lag, u);
  double pk = label.p_poly.evaluate(x);
  return std::exp(detail::log_amplitude_sorted(p, x.data())) * lag * pk;
}

// ln|Psi_{n,k}| at a configuration in arbitrary order (for sampling the
// symmetrized excited state); -inf at nodes and coincidences.
inline double log_abs_excited_symmetrized(const ModelParams& p,
                                          const ExcitedLabel& label,
                                          std::span<const double> y) noexcept {
  std::vector<double> x(y.begin(), y.end());
  std::sort(x.begin(), x.end(), std::greater<>());
  double base = detail::log_amplitude_sorted(p, x.data());
  if (!std::isfinite(base)) return base;
  double u = 0.0;
  for (double xi : x) u += xi * xi;
  double g = detail::eval_poly_coeffs(label.lag, u) * label.p_poly.evaluate(x);
  if (g == 0.0) return -std::numeric_limits<double>::infinity();
  return base + std::log(std::abs(g));
}

// Local energy for Psi_{n,k}; equals E0 + 2n + k at every sector point.
inline double local_energy_excited(const ModelParams& p, const ExcitedLabel& label,
                                   std::span<const double> x) {
  LogDerivatives d = derivatives_log(p, x);
  double grad0_sq = 0.0;
  for (double g : d.gradient) grad0_sq += g * g;
  double u = 0.0;
  for (double xi : x) u += xi * xi;
  double lag = detail::eval_poly_coeffs(label.lag, u);
  double lag1 = detail::eval_poly_coeffs(label.lag_d1, u);
  double lag2 = detail::eval_poly_coeffs(label.lag_d2, u);
  double pk = label.p_poly.evaluate(x);
  double g_val = lag * pk;
  if (g_val == 0.0) throw Error("local energy evaluated at a node of the excited state");
  double euler_p = 0.0;  // sum_i x_i d_i P
  double cross = 0.0;    // grad ln Psi_0 . grad G
  for (int i = 0; i < p.n; ++i) {
    double dpi = label.p_grad[i].evaluate(x);
    euler_p += x[i] * dpi;
    double dgi = lag1 * 2.0 * x[i] * pk + lag * dpi;
    cross += d.gradient[i] * dgi;
  }
  double lap_g = 2.0 * p.n * lag1 * pk + 4.0 * u * lag2 * pk + 4.0 * lag1 * euler_p +
                 lag * label.p_lap.evaluate(x);
  double lap_psi_over_psi =
      (d.laplacian_sum + grad0_sq) + 2.0 * cross / g_val + lap_g / g_val;
  return -0.5 * lap_psi_over_psi + potential_energy(p, x);
}

}  // namespace tcsm
