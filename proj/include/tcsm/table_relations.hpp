#pragma once

// Exact closed-form relations satisfied by the constraint solutions for
// k <= 5: one set for the truncated regime r < N-1 (a one-parameter family
// per k), one set for the full range r = N-1 (where the solution space is
// larger and the relations take a different shape). All checks are exact
// rational identities evaluated on computed nullspace vectors; the lambda
// relations are cross-multiplied so no division can fail.

#include <string>
#include <vector>

#include "tcsm/sympoly.hpp"

namespace tcsm {

struct RelationCheck {
  std::string name;
  bool pass = false;
};

namespace detail {

inline Rational range_factor(const ConstraintSolution& sol) {
  return Rational(sol.range) * Rational(2L * sol.n - sol.range - 1);  // r(2N-r-1)
}

}  // namespace detail

// Relations for r < N-1 on a dimension-1 solution (coefficients normalized
// arbitrarily; every relation is homogeneous in the c's). k = 1 has none.
inline std::vector<RelationCheck> truncated_regime_relations(
    const ConstraintSolution& sol, int vec = 0) {
  const Rational R = detail::range_factor(sol);
  const Rational lam = sol.lambda;
  const Rational N(sol.n);
  auto c = [&](std::initializer_list<int> parts) {
    return sol.coeff(vec, Partition(parts));
  };
  std::vector<RelationCheck> out;
  auto push = [&](const std::string& name, bool ok) { out.push_back({name, ok}); };

  switch (sol.k) {
    case 1:
      break;
    case 2:
      push("k2: lambda (c11 - 2 c2) R = 2N c2",
           lam * (c({1, 1}) - 2 * c({2})) * R == 2 * N * c({2}));
      break;
    case 3: {
      push("k3: lambda (c21 - 3 c3) R = 2[3 c3 + c21 (N-1)]",
           lam * (c({2, 1}) - 3 * c({3})) * R ==
               2 * (3 * c({3}) + c({2, 1}) * (N - 1)));
      push("k3: c111 = 3 (c21 - c3)", c({1, 1, 1}) == 3 * (c({2, 1}) - c({3})));
      break;
    }
    case 4: {
      push("k4: lambda (c31 - 4 c4) R = 2[6 c4 + c22 (N-1)]",
           lam * (c({3, 1}) - 4 * c({4})) * R ==
               2 * (6 * c({4}) + c({2, 2}) * (N - 1)));
      push("k4: c1111 = 6 (c22 - 2 c4)",
           c({1, 1, 1, 1}) == 6 * (c({2, 2}) - 2 * c({4})));
      push("k4: c211 = c31 + 2 c22 - 4 c4",
           c({2, 1, 1}) == c({3, 1}) + 2 * c({2, 2}) - 4 * c({4}));
      push("k4: bracket constraint",
           is_zero((N + 4) * c({3, 1}) + (N - 2) * (2 * c({2, 2}) - 4 * c({4})) +
                   lam * R * (2 * c({4}) + c({3, 1}) - c({2, 2}))));
      break;
    }
    case 5: {
      push("k5: lambda (c41 - 5 c5) R = 2[10 c5 + (N-1) c32]",
           lam * (c({4, 1}) - 5 * c({5})) * R ==
               2 * (10 * c({5}) + (N - 1) * c({3, 2})));
      push("k5: c311 = 2 c32 + c41 - 5 c5",
           c({3, 1, 1}) == 2 * c({3, 2}) + c({4, 1}) - 5 * c({5}));
      push("k5: c221 = 5 c32 - 3 c41 - 5 c5",
           c({2, 2, 1}) == 5 * c({3, 2}) - 3 * c({4, 1}) - 5 * c({5}));
      push("k5: c2111 = 3 (4 c32 - 3 c41 - 5 c5)",
           c({2, 1, 1, 1}) == 3 * (4 * c({3, 2}) - 3 * c({4, 1}) - 5 * c({5})));
      push("k5: c11111 = 30 (c32 - c41 - c5)",
           c({1, 1, 1, 1, 1}) == 30 * (c({3, 2}) - c({4, 1}) - c({5})));
      push("k5: bracket constraint",
           is_zero((5 * N - 7) * c({3, 2}) - 3 * (N - 4) * c({4, 1}) -
                   5 * (N - 2) * c({5}) +
                   lam * R / 2 * (5 * c({5}) + 3 * c({4, 1}) - 2 * c({3, 2}))));
      break;
    }
    default:
      break;
  }
  return out;
}

// Relations for r = N-1, applied to every nullspace vector. k = 2 shares
// the truncated-regime relation (the constraint is the same equation); the
// listed full-range rows start at k = 3.
inline std::vector<RelationCheck> full_range_relations(const ConstraintSolution& sol,
                                                       int vec) {
  const Rational lam = sol.lambda;
  const Rational N(sol.n);
  auto c = [&](std::initializer_list<int> parts) {
    return sol.coeff(vec, Partition(parts));
  };
  std::vector<RelationCheck> out;
  auto push = [&](const std::string& name, bool ok) { out.push_back({name, ok}); };

  switch (sol.k) {
    case 1:
      break;
    case 2:
      return truncated_regime_relations(sol, vec);
    case 3: {
      push("k3 full: 6c3 + 2c21(N-1) + 2 lam (N-1)[3c3 - c21 + (N-2)(c21 - c111/2)]",
           is_zero(6 * c({3}) + 2 * c({2, 1}) * (N - 1) +
                   2 * lam * (N - 1) *
                       (3 * c({3}) - c({2, 1}) +
                        (N - 2) * (c({2, 1}) - c({1, 1, 1}) / 2))));
      break;
    }
    case 4: {
      push("k4 full row 1",
           is_zero(12 * c({4}) + 2 * (N - 1) * c({2, 2}) +
                   2 * lam * (N - 1) *
                       (4 * c({4}) - c({3, 1}) +
                        (N - 2) * (c({2, 2}) - c({2, 1, 1}) / 2))));
      push("k4 full row 2",
           is_zero(12 * c({3, 1}) + 2 * (N - 2) * c({2, 1, 1}) +
                   4 * lam * (2 * c({4}) - c({2, 2}) + (3 * N - 5) * c({3, 1})) +
                   2 * lam * (N - 2) *
                       ((N - 5) * c({2, 1, 1}) -
                        (N - 3) / 2 * c({1, 1, 1, 1}))));
      break;
    }
    case 5: {
      // leading coefficient is 10 c5, not 5 c5: the Laplacian of m_5
      // contributes 20 x1^3 against 2(N-1) x1^3 from m_32
      push("k5 full row 1",
           is_zero(10 * c({5}) + c({3, 2}) * (N - 1) +
                   lam * ((5 * c({5}) - c({4, 1})) * (N - 1) +
                          (c({3, 2}) - c({3, 1, 1}) / 2) * (N - 1) * (N - 2))));
      push("k5 full row 2",
           is_zero(9 * c({3, 1, 1}) + (N - 3) * c({2, 1, 1, 1}) +
                   lam * (3 * (4 * c({4, 1}) - 2 * c({2, 2, 1}) + 2 * c({3, 1, 1})) +
                          (9 * c({3, 1, 1}) - 3 * c({2, 1, 1, 1})) * (N - 3) +
                          (c({2, 1, 1, 1}) - c({1, 1, 1, 1, 1}) / 2) * (N - 4) *
                              (N - 3))));
      push("k5 full row 3",
           is_zero(6 * c({4, 1}) + 3 * c({3, 2}) + c({2, 2, 1}) * (N - 2) +
                   lam * ((5 * c({5}) + 3 * c({4, 1}) - 2 * c({3, 2})) +
                          (N - 2) * (4 * c({4, 1}) - c({3, 1, 1}) + 3 * c({3, 2}) +
                                     (N - 4) * c({2, 2, 1}) -
                                     c({2, 1, 1, 1}) / 2 * (N - 3)))));
      break;
    }
    default:
      break;
  }
  return out;
}

// All applicable table relations for a solution, across basis vectors.
inline std::vector<RelationCheck> table_relation_checks(const ConstraintSolution& sol) {
  std::vector<RelationCheck> out;
  if (sol.regime == ConstraintRegime::Truncated) {
    for (int v = 0; v < sol.dimension(); ++v) {
      auto rels = truncated_regime_relations(sol, v);
      out.insert(out.end(), rels.begin(), rels.end());
    }
  } else {
    for (int v = 0; v < sol.dimension(); ++v) {
      auto rels = full_range_relations(sol, v);
      out.insert(out.end(), rels.begin(), rels.end());
    }
  }
  return out;
}

}  // namespace tcsm
