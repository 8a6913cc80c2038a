#pragma once

// Test-only oracles, independent of the implementation paths they check:
// finite-difference derivatives of the log amplitude, a finite-difference
// local energy, and the analytic Tonks-Girardeau density.

#include <cmath>
#include <span>
#include <vector>

#include "tcsm/model.hpp"
#include "tcsm/wavefunction.hpp"

namespace tcsm::oracle {

// Central finite-difference gradient of ln|Psi_0|.
inline std::vector<double> fd_gradient(const ModelParams& p, std::span<const double> x,
                                       double h = 1e-5) {
  std::vector<double> g(p.n);
  std::vector<double> y(x.begin(), x.end());
  for (int i = 0; i < p.n; ++i) {
    double x0 = y[i];
    y[i] = x0 + h;
    double fp = log_amplitude(p, y);
    y[i] = x0 - h;
    double fm = log_amplitude(p, y);
    y[i] = x0;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

// Central finite-difference sum of second derivatives of ln|Psi_0|.
inline double fd_laplacian(const ModelParams& p, std::span<const double> x,
                           double h = 1e-4) {
  std::vector<double> y(x.begin(), x.end());
  double f0 = log_amplitude(p, y);
  double acc = 0.0;
  for (int i = 0; i < p.n; ++i) {
    double x0 = y[i];
    y[i] = x0 + h;
    double fp = log_amplitude(p, y);
    y[i] = x0 - h;
    double fm = log_amplitude(p, y);
    y[i] = x0;
    acc += (fp - 2.0 * f0 + fm) / (h * h);
  }
  return acc;
}

// Local energy built entirely from log-amplitude evaluations.
inline double fd_local_energy(const ModelParams& p, std::span<const double> x) {
  auto g = fd_gradient(p, x);
  double grad2 = 0.0;
  for (double v : g) grad2 += v * v;
  return -0.5 * (fd_laplacian(p, x) + grad2) + potential_energy(p, x);
}

// Normalized harmonic-oscillator eigenfunction phi_n(x).
inline double ho_eigenfunction(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  for (int m = 0; m < n; ++m) {
    double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(double(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Tonks-Girardeau density sum_{n=0}^{N-1} |phi_n(x)|^2.
inline double tg_density(int n_particles, double x) {
  double acc = 0.0;
  for (int m = 0; m < n_particles; ++m) {
    double f = ho_eigenfunction(m, x);
    acc += f * f;
  }
  return acc;
}

}  // namespace tcsm::oracle
