#pragma once

// The fast invariant suite behind `tcsm verify`: local-energy constancy,
// virial, the three-body rewrite, operator commutators, nullspace
// dimensions, degeneracy identities, Laguerre closed forms and the radial
// recurrence. Exact checks run at full strength; Monte Carlo checks use
// moderate sample counts (the acceptance suite runs them at full scale).

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcsm/estimators.hpp"
#include "tcsm/model.hpp"
#include "tcsm/operator_algebra.hpp"
#include "tcsm/sampler.hpp"
#include "tcsm/sympoly.hpp"
#include "tcsm/wavefunction.hpp"

namespace tcsm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool include_mc = true;  // skip sampling-based checks when false
  std::uint64_t seed = 20240901;
  long mc_samples = 20000;
};

namespace detail {

inline std::vector<double> verification_sector_point(int n, std::mt19937_64& rng,
                                                     double min_gap = 0.25) {
  std::uniform_real_distribution<double> jitter(0.0, 0.6);
  std::vector<double> x(n);
  double top = 0.5 * (n - 1) * (min_gap + 0.3);
  for (int i = 0; i < n; ++i) {
    top -= (i == 0) ? jitter(rng) : min_gap + jitter(rng);
    x[i] = top;
  }
  return x;
}

}  // namespace detail

inline CheckResult check_local_energy_constancy(std::uint64_t seed) {
  CheckResult res{"local-energy constancy", true, ""};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; r <= n - 1; ++r)
      for (double lambda : {0.5, 1.0, 2.0}) {
        auto p = validate_params(n, lambda, r);
        double e0 = ground_state_energy(p);
        for (int rep = 0; rep < 100; ++rep) {
          auto x = detail::verification_sector_point(n, rng);
          worst = std::max(worst, std::abs(local_energy(p, x) / e0 - 1.0));
        }
      }
  res.pass = worst < 1e-9;
  std::ostringstream os;
  os << "max relative deviation " << worst << " over N<=6, lambda in {1/2,1,2}, all r";
  res.detail = os.str();
  return res;
}

inline CheckResult check_three_body_identity(std::uint64_t seed) {
  CheckResult res{"three-body rewrite identity", true, ""};
  std::mt19937_64 rng(seed + 1);
  double worst = 0.0;
  bool sign_ok = true;
  for (int n = 3; n <= 8; ++n)
    for (int r = 1; r <= n - 1; ++r) {
      auto p = validate_params(n, 1.0, r);
      for (int rep = 0; rep < 20; ++rep) {
        auto x = detail::verification_sector_point(n, rng, 0.2);
        auto id = three_body_identity(p, x);
        worst = std::max(worst, std::abs(id.lhs - id.rhs));
        if (id.lhs > 1e-12) sign_ok = false;
      }
    }
  res.pass = worst < 1e-12 && sign_ok;
  std::ostringstream os;
  os << "max |lhs-rhs| " << worst << (sign_ok ? ", lhs <= 0 on sector" : ", SIGN VIOLATION");
  res.detail = os.str();
  return res;
}

inline CheckResult check_commutators(std::uint64_t seed) {
  CheckResult res{"operator commutators", true, ""};
  std::mt19937_64 rng(seed + 2);
  long cells = 0;
  for (int n : {3, 4, 5}) {
    for (int r : {1, n - 1}) {
      for (auto lambda : {make_rational(1, 2), make_rational(1), make_rational(2)}) {
        std::vector<Poly> polys;
        for (int t = 0; t < 8; ++t) polys.push_back(random_symmetric_poly(n, 6, rng));
        auto c1 = commutator_check(n, lambda, r, OpName::Dplus, OpName::K,
                                   {{make_rational(2), OpName::Dplus}}, polys);
        auto c2 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DplusPrime,
                                   {{make_rational(1), OpName::DplusPrime}}, polys);
        auto c3 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DminusPrime,
                                   {{make_rational(-1), OpName::DminusPrime}}, polys);
        auto c4 = commutator_check(n, lambda, r, OpName::DplusPrime, OpName::DminusPrime,
                                   {{make_rational(-2), OpName::KPrime}}, polys);
        if (!(c1.pass && c2.pass && c3.pass && c4.pass)) res.pass = false;
        ++cells;
      }
    }
  }
  res.detail = "[D+,K]=2D+ and SU(1,1) relations exact on " + std::to_string(cells) +
               " parameter cells, 8 random polynomials each";
  return res;
}

inline CheckResult check_nullspace_dimensions() {
  CheckResult res{"constraint nullspace dimensions", true, ""};
  for (int n = 4; n <= 7; ++n)
    for (int r = 1; r <= n - 1; ++r)
      for (auto lambda : {make_rational(1, 3), make_rational(1), make_rational(7, 2)})
        for (int k = 1; k <= std::min(5, n); ++k) {
          auto sol = laplace_constraints(n, lambda, r, k);
          long expected = (r == n - 1)
                              ? partition_count(k, n) - partition_count(k - 2, n)
                              : 1;
          if (sol.dimension() != expected) {
            res.pass = false;
            res.detail = "dimension mismatch at N=" + std::to_string(n) +
                         " r=" + std::to_string(r) + " k=" + std::to_string(k);
            return res;
          }
          for (int v = 0; v < sol.dimension(); ++v) {
            auto img = apply_dplus(n, lambda, r, sol.polynomial(v));
            if (!img || !img->is_zero()) {
              res.pass = false;
              res.detail = "basis vector fails D+ P = 0";
              return res;
            }
          }
        }
  res.detail = "dimension 1 for r < N-1 and M(k)-M(k-2) for r = N-1, N <= 7, k <= 5";
  return res;
}

inline CheckResult check_degeneracy_identities() {
  CheckResult res{"degeneracy identities", true, ""};
  for (int n = 2; n <= 8; ++n) {
    ModelParams full{n, 1.0, n - 1};
    ModelParams trunc{n, 1.0, 1};
    for (int s = 0; s <= 8; ++s) {
      if (!degeneracy_telescoping_holds(s, n)) res.pass = false;
      if (s <= n && degeneracy(full, s).value != oscillator_tower_count(s, n))
        res.pass = false;
      long count_nk = 0;
      for (int nr = 0; 2 * nr <= s; ++nr) ++count_nk;
      if (degeneracy(trunc, s).value != count_nk) res.pass = false;
    }
  }
  res.detail = "d(s) vs (n,k) count, telescoping sum and oscillator-tower count, s <= 8";
  return res;
}

inline CheckResult check_laguerre_closed_forms() {
  CheckResult res{"Laguerre closed forms", true, ""};
  for (auto nu : {make_rational(1, 2), make_rational(7, 3), make_rational(5)}) {
    auto l0 = laguerre_coefficients(0, nu);
    auto l1 = laguerre_coefficients(1, nu);
    auto l2 = laguerre_coefficients(2, nu);
    if (l0[0] != Rational(1)) res.pass = false;
    if (l1[0] != nu + 1 || l1[1] != Rational(-1)) res.pass = false;
    if (l2[0] != (nu + 1) * (nu + 2) / 2 || l2[1] != -(nu + 2) ||
        l2[2] != make_rational(1, 2))
      res.pass = false;
  }
  res.detail = "L_0, L_1, L_2 coefficient identities at three rational nu";
  return res;
}

inline CheckResult check_recurrence_relation() {
  CheckResult res{"radial recurrence relation", true, ""};
  for (int n : {4, 5}) {
    for (int r = 1; r <= n - 1; ++r) {
      for (auto lambda : {make_rational(1, 2), make_rational(1)}) {
        for (int k = 1; k <= 3; ++k) {
          auto sol = laplace_constraints(n, lambda, r, k);
          Poly pk = sol.polynomial(0);
          for (int n_rad = 0; n_rad <= 3; ++n_rad)
            if (!recurrence_check(n, lambda, r, k, n_rad, pk)) res.pass = false;
        }
      }
    }
  }
  res.detail = "exact for N in {4,5}, all r, k <= 3, n <= 3";
  return res;
}

inline CheckResult check_virial(std::uint64_t seed, long n_samples) {
  CheckResult res{"virial identity <sum x^2> = E0", true, ""};
  double worst_pull = 0.0;
  for (int n : {3, 5}) {
    for (int r : {1, n - 1}) {
      for (double lambda : {0.5, 1.0, 2.0}) {
        auto p = validate_params(n, lambda, r);
        ChainConfig cfg;
        cfg.seed = seed + 10 * n + r;
        cfg.n_samples = n_samples;
        cfg.burn_in = 1500;
        cfg.n_chains = 2;
        auto rep = diagnostics(run_chain(p, cfg));
        double pull = std::abs(rep.observables[0].mean - ground_state_energy(p)) /
                      rep.observables[0].std_error;
        worst_pull = std::max(worst_pull, pull);
      }
    }
  }
  res.pass = worst_pull < 4.0;
  std::ostringstream os;
  os << "max |<sum x^2> - E0| / sigma = " << worst_pull << " over 12 cells";
  res.detail = os.str();
  return res;
}

inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(check_local_energy_constancy(opt.seed));
  out.push_back(check_three_body_identity(opt.seed));
  out.push_back(check_commutators(opt.seed));
  out.push_back(check_nullspace_dimensions());
  out.push_back(check_degeneracy_identities());
  out.push_back(check_laguerre_closed_forms());
  out.push_back(check_recurrence_relation());
  if (opt.include_mc) out.push_back(check_virial(opt.seed, opt.mc_samples));
  return out;
}

}  // namespace tcsm
