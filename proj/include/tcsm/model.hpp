#pragma once

// Model parameters, interaction topology and closed-form energies for the
// truncated Calogero-Sutherland model (TCSM): N particles in a harmonic
// trap with inverse-square pair interactions truncated beyond r neighbor
// indices, plus the companion attractive three-body term.
//
// Units: hbar = m = omega = 1 throughout (oscillator units). Lengths are in
// units of sqrt(hbar/(m*omega)), energies in hbar*omega.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcsm/errors.hpp"

namespace tcsm {

struct IndexPair {
  int i, j;  // 0-based, i < j
  bool operator==(const IndexPair&) const = default;
};

struct IndexTriple {
  int i, j, k;  // 0-based, i < j < k
  bool operator==(const IndexTriple&) const = default;
};

using PairList = std::vector<IndexPair>;
using TripleList = std::vector<IndexTriple>;

struct ModelParams {
  int n = 1;           // particle count N
  double lambda = 0.0; // coupling, >= 0
  int range = 0;       // neighbor-index truncation r, 0 <= r <= N-1

  // m*omega/hbar; identically 1 under the unit convention.
  static constexpr double omega_tilde = 1.0;

  // Number of interacting pairs, r(2N-r-1)/2.
  long pair_count() const {
    return static_cast<long>(range) * (2L * n - range - 1) / 2;
  }
};

// Validates raw inputs. Indices and bounds are reported 1-based in messages
// to match the usual labeling x_1 > x_2 > ... > x_N.
inline ModelParams validate_params(int n, double lambda, int range) {
  if (n < 1) throw RangeOutOfBounds("particle count N must be >= 1, got " + std::to_string(n));
  if (range < 0 || range > n - 1) {
    throw RangeOutOfBounds("range r must satisfy 0 <= r <= N-1 = " +
                           std::to_string(n - 1) + ", got " + std::to_string(range));
  }
  if (lambda < 0.0) {
    throw NegativeCoupling("coupling lambda must be >= 0, got " + std::to_string(lambda));
  }
  return ModelParams{n, lambda, range};
}

// E0 = (1/2)[N + lambda r (2N - r - 1)], in units of hbar*omega.
inline double ground_state_energy(const ModelParams& p) {
  return 0.5 * (p.n + p.lambda * p.range * (2.0 * p.n - p.range - 1));
}

// Ground-state energy of the relative motion, E0 - 1/2: the center-of-mass
// zero point separates off exactly.
inline double relative_ground_energy(const ModelParams& p) {
  return ground_state_energy(p) - 0.5;
}

struct InteractionSets {
  PairList pairs;        // i<j with |i-j| <= r
  TripleList triples;    // i<j<k with j-i <= r and k-j <= r
  TripleList far_triples;// triples with additionally k-i > r (and k-i <= 2r)
};

inline InteractionSets enumerate_interactions(const ModelParams& p) {
  InteractionSets s;
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n && j - i <= p.range; ++j)
      s.pairs.push_back({i, j});
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n && j - i <= p.range; ++j)
      for (int k = j + 1; k < p.n && k - j <= p.range; ++k) {
        s.triples.push_back({i, j, k});
        if (k - i > p.range) s.far_triples.push_back({i, j, k});
      }
  return s;
}

}  // namespace tcsm
