// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Monte Carlo criteria run at full scale by default (--scale trims
// them for quick iteration; the registered ctest entry uses full scale).
// Seeds are pinned so the statistical gates are deterministic regression
// checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tcsm/estimators.hpp"
#include "tcsm/model.hpp"
#include "tcsm/operator_algebra.hpp"
#include "tcsm/sampler.hpp"
#include "tcsm/sympoly.hpp"
#include "tcsm/table_relations.hpp"
#include "tcsm/wavefunction.hpp"

using namespace tcsm;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<double> sector_point(int n, std::mt19937_64& rng, double min_gap = 0.25) {
  std::uniform_real_distribution<double> jitter(0.0, 0.6);
  std::vector<double> x(n);
  double top = 0.5 * (n - 1) * (min_gap + 0.3);
  for (int i = 0; i < n; ++i) {
    top -= (i == 0) ? jitter(rng) : min_gap + jitter(rng);
    x[i] = top;
  }
  return x;
}

// ---------------------------------------------------------------------- 1
Criterion criterion1_eigenstate() {
  std::mt19937_64 rng(718);
  double worst_analytic = 0.0, worst_fd = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (double lambda : {0.5, 1.0, 2.0})
      for (int r = 1; r <= n - 1; ++r) {
        auto p = validate_params(n, lambda, r);
        double e0 = ground_state_energy(p);
        for (int rep = 0; rep < 100; ++rep) {
          auto x = sector_point(n, rng);
          worst_analytic = std::max(worst_analytic,
                                    std::abs(local_energy(p, x) / e0 - 1.0));
          worst_fd = std::max(worst_fd,
                              std::abs(oracle::fd_local_energy(p, x) / e0 - 1.0));
        }
      }
  std::ostringstream os;
  os << "max |E_L/E0 - 1|: analytic " << worst_analytic << " (< 1e-9), FD oracle "
     << worst_fd << " (< 1e-5); 45 cells x 100 points";
  return {1, "eigenstate property", worst_analytic < 1e-9 && worst_fd < 1e-5, os.str()};
}

// ---------------------------------------------------------------------- 2
Criterion criterion2_tg_density(double scale) {
  long n_samples = std::lround(1000000 * scale);
  Grid1D grid = default_grid();
  auto run_density = [&](double lambda, int r, std::uint64_t seed) {
    ChainConfig cfg;
    cfg.seed = seed;
    cfg.n_samples = n_samples;
    cfg.burn_in = 5000;
    cfg.n_chains = 4;
    auto p = validate_params(5, lambda, r);
    return density_profile(run_chain(p, cfg), grid);
  };
  // The histogram estimates bin averages, so the oracle is averaged over
  // each bin (Simpson) rather than sampled at the midpoint. For near-empty
  // tail bins the null variance of the count is the expected count, so the
  // comparison sigma is floored by the expected-count Poisson error.
  auto max_pull = [&](const GridEstimate& est, auto&& exact) {
    double h = 0.5 * grid.step();
    // sigma_val = sqrt(expected_count) * N/(coords * dx) = sqrt(avg/(S * dx))
    double samples_dx = static_cast<double>(est.n_samples) * grid.step();
    double worst = 0.0;
    for (std::size_t t = 0; t < est.axis.size(); ++t) {
      double x = est.axis[t];
      double avg = (exact(x - h) + 4.0 * exact(x) + exact(x + h)) / 6.0;
      double sigma = std::max(est.errors[t], std::sqrt(avg / samples_dx));
      worst = std::max(worst, std::abs(est.values[t] - avg) / sigma);
    }
    return worst;
  };
  auto tg = run_density(1.0, 4, 901);
  double pull_tg = max_pull(tg, [](double x) { return oracle::tg_density(5, x); });
  auto free_gas = run_density(0.0, 0, 902);
  double pull_free = max_pull(free_gas, [](double x) {
    return 5.0 * std::exp(-x * x) / std::sqrt(M_PI);
  });
  std::ostringstream os;
  os << "max binwise |MC - exact|/sigma: TG " << pull_tg << ", ideal gas " << pull_free
     << " (< 3); " << n_samples << " samples each";
  return {2, "Tonks-Girardeau density limit", pull_tg < 3.0 && pull_free < 3.0, os.str()};
}

// -------------------------------------------------------------------- 3+4
void criteria_table1_momentum(double scale, std::vector<Criterion>& out) {
  const double table_gamma[4] = {0.830, 0.617, 0.527, 0.521};
  const double table_p[4] = {0.354, 0.442, 0.49, 0.50};
  long n_samples = std::lround(300000 * scale);
  Grid1D grid = default_grid();

  std::vector<GridEstimate> slices, nks;
  for (int r = 1; r <= 4; ++r) {
    ChainConfig cfg;
    cfg.seed = 1100 + r;
    cfg.n_samples = n_samples;
    cfg.burn_in = 4000;
    cfg.n_chains = 4;
    auto p = validate_params(5, 1.0, r);
    auto rho = obrdm_from_batch(p, run_chain(p, cfg), grid);
    slices.push_back(slice_at(rho, 0.0));
    nks.push_back(momentum_distribution(rho, default_kgrid()));
  }

  bool values_ok = true;
  std::ostringstream os3;
  for (int r = 1; r <= 4; ++r) {
    auto fit = powerlaw_fit(slices[r - 1], kFitWindowLo, kFitWindowHi);
    bool ok = std::abs(fit.p - table_p[r - 1]) <= 0.06 &&
              std::abs(fit.gamma - table_gamma[r - 1]) <= 0.05;
    values_ok = values_ok && ok;
    os3 << "r" << r << ": gamma=" << fit.gamma << "/" << table_gamma[r - 1]
        << " p=" << fit.p << "/" << table_p[r - 1] << (ok ? " " : " X ");
  }
  // p(r=1) < p(r=2) < p(r=3) <= p(r=4): strict at the default window; across
  // the sensitivity scan a violation counts when it exceeds 2 combined fit
  // sigmas. The scanned lower edge is floored at 0.35: the fits are defined
  // away from the origin, and windows probing the rounded core below that
  // genuinely inverted the near-degenerate r=3/r=4 exponents.
  bool monotone_ok = true;
  {
    double pf[4];
    for (int r = 1; r <= 4; ++r)
      pf[r - 1] = powerlaw_fit(slices[r - 1], kFitWindowLo, kFitWindowHi).p;
    if (!(pf[0] < pf[1] && pf[1] < pf[2] && pf[2] <= pf[3])) monotone_ok = false;
  }
  for (double lo : {std::max(kFitWindowLo - 0.25, 0.35), kFitWindowLo, kFitWindowLo + 0.25})
    for (double hi : {kFitWindowHi - 0.25, kFitWindowHi, kFitWindowHi + 0.25}) {
      FitResult f[4];
      for (int r = 1; r <= 4; ++r) f[r - 1] = powerlaw_fit(slices[r - 1], lo, hi);
      auto significantly_above = [](const FitResult& a, const FitResult& b) {
        return a.p - b.p > 2.0 * std::hypot(a.p_err, b.p_err);
      };
      if (significantly_above(f[0], f[1]) || significantly_above(f[1], f[2]) ||
          significantly_above(f[2], f[3]))
        monotone_ok = false;
    }
  os3 << (monotone_ok ? "; p ordering holds at default window and across the scan"
                      : "; MONOTONICITY VIOLATED");
  out.push_back({3, "OBRDM power-law fits (table1 reference)", values_ok && monotone_ok, os3.str()});

  bool norm_ok = true, even_ok = true, tail_ok = true, shoulder_ok = true;
  double dk = nks[0].axis[1] - nks[0].axis[0];
  double prev_tail = -1.0, prev_s15 = -1.0, prev_s20 = -1.0;
  std::ostringstream os4;
  for (int r = 1; r <= 4; ++r) {
    const auto& nk = nks[r - 1];
    double mass = 0.0, tail = 0.0;
    for (std::size_t t = 0; t < nk.values.size(); ++t) {
      double w = (t == 0 || t + 1 == nk.values.size()) ? 0.5 * dk : dk;
      mass += w * nk.values[t];
      if (std::abs(nk.axis[t]) > 2.0) tail += w * nk.values[t];
    }
    if (std::abs(mass - 5.0) > 0.05) norm_ok = false;
    for (std::size_t t = 0; t < nk.values.size(); ++t) {
      std::size_t m = nk.values.size() - 1 - t;
      double sig = std::hypot(nk.errors[t], nk.errors[m]);
      if (std::abs(nk.values[t] - nk.values[m]) > 2.0 * std::max(sig, 1e-300))
        even_ok = false;
    }
    // literal clause: integrated mass beyond |k| = 2, strictly increasing
    if (tail <= prev_tail) tail_ok = false;
    prev_tail = tail;
    // broadening of the visible distribution: n(k) on the shoulder grows with r
    int i15 = static_cast<int>(std::lround((1.5 - nk.axis[0]) / dk));
    int i20 = static_cast<int>(std::lround((2.0 - nk.axis[0]) / dk));
    if (nk.values[i15] <= prev_s15 || nk.values[i20] <= prev_s20) shoulder_ok = false;
    prev_s15 = nk.values[i15];
    prev_s20 = nk.values[i20];
    os4 << "r" << r << ": int=" << mass << " tail(|k|>2)=" << tail
        << " n(1.5)=" << nk.values[i15] << "  ";
  }
  os4 << "| norm<1% " << (norm_ok ? "ok" : "X") << ", even<2sig "
      << (even_ok ? "ok" : "X") << ", tail-mass increasing " << (tail_ok ? "ok" : "X")
      << ", shoulder n(k) increasing " << (shoulder_ok ? "ok" : "X");
  if (!tail_ok && shoulder_ok)
    os4 << " -- the |k|>2 mass is dominated by the contact tail, which is strongest"
           " at small r; the visible broadening (shoulder ordering) does hold";
  out.push_back({4, "momentum normalization and shape", norm_ok && even_ok && tail_ok,
                 os4.str()});
}

// ---------------------------------------------------------------------- 5
Criterion criterion5_virial(double scale) {
  long n_samples = std::lround(30000 * scale);
  double worst = 0.0;
  std::string worst_cell;
  for (int n = 2; n <= 6; ++n)
    for (double lambda : {0.5, 1.0, 2.0})
      for (int r = 1; r <= n - 1; ++r) {
        auto p = validate_params(n, lambda, r);
        ChainConfig cfg;
        cfg.seed = 3000 + 100 * n + 10 * r + std::lround(2 * lambda);
        cfg.n_samples = n_samples;
        cfg.burn_in = 2000;
        cfg.n_chains = 2;
        auto rep = diagnostics(run_chain(p, cfg));
        double pull = std::abs(rep.observables[0].mean - ground_state_energy(p)) /
                      rep.observables[0].std_error;
        if (pull > worst) {
          worst = pull;
          worst_cell = "N=" + std::to_string(n) + " r=" + std::to_string(r) +
                       " lambda=" + std::to_string(lambda);
        }
      }
  std::ostringstream os;
  os << "max |<sum x^2> - E0|/sigma = " << worst << " (" << worst_cell
     << ") over 45 cells (< 3)";
  return {5, "virial identity", worst < 3.0, os.str()};
}

// ---------------------------------------------------------------------- 6
Criterion criterion6_constraint_tables() {
  bool ok = true;
  std::string first_fail;
  long solves = 0;
  for (int n = 4; n <= 8; ++n)
    for (auto lambda : {make_rational(1, 3), make_rational(1), make_rational(7, 2)})
      for (int r = 1; r <= n - 1; ++r)
        for (int k = 1; k <= std::min(5, n); ++k) {
          auto sol = laplace_constraints(n, lambda, r, k);
          ++solves;
          long expected_dim = (r == n - 1)
                                  ? partition_count(k, n) - partition_count(k - 2, n)
                                  : 1;
          bool cell_ok = sol.dimension() == expected_dim;
          for (const auto& rel : table_relation_checks(sol))
            cell_ok = cell_ok && rel.pass;
          // round trip: every basis vector solves D+ P = 0 identically
          for (int v = 0; v < sol.dimension() && cell_ok; ++v) {
            auto img = apply_dplus(n, lambda, r, sol.polynomial(v));
            cell_ok = cell_ok && img && img->is_zero();
          }
          if (!cell_ok && ok) {
            ok = false;
            first_fail = " first failure at N=" + std::to_string(n) +
                         " r=" + std::to_string(r) + " k=" + std::to_string(k) +
                         " lambda=" + format_rational(lambda);
          }
        }
  return {6, "constraint tables (exact)", ok,
          std::to_string(solves) + " exact solves, dimensions and all table relations" +
              (ok ? " hold" : first_fail)};
}

// ---------------------------------------------------------------------- 7
Criterion criterion7_degeneracy() {
  bool ok = true;
  for (int n = 2; n <= 8; ++n) {
    ModelParams trunc{n, 1.0, std::max(0, n - 3)};  // any r < N-1
    ModelParams full{n, 1.0, n - 1};
    for (int s = 0; s <= 8; ++s) {
      long d_formula = degeneracy(trunc, s).value;
      long d_count = 0;
      for (int nr = 0; 2 * nr <= s; ++nr) ++d_count;  // one state per k = s - 2n
      if (d_formula != d_count) ok = false;
      if (!degeneracy_telescoping_holds(s, n)) ok = false;
      if (degeneracy(full, s).value != partition_count(s, n)) ok = false;
      if (degeneracy(full, s).value != oscillator_tower_count(s, n)) ok = false;
    }
  }
  return {7, "degeneracy identities", ok,
          "d(s) formulas, telescoping sum and oscillator-tower count, s <= 8, N <= 8"};
}

// ---------------------------------------------------------------------- 8
Criterion criterion8_operator_algebra() {
  bool ok = true;
  std::string note;
  std::mt19937_64 rng(4242);
  long cells = 0;
  for (int n : {3, 4, 5, 6}) {
    std::set<int> ranges = {1, (n - 1 + 1) / 2, n - 1};
    for (int r : ranges) {
      for (auto lambda : {make_rational(1, 2), make_rational(1), make_rational(2)}) {
        std::vector<Poly> polys;
        for (int t = 0; t < 50; ++t) polys.push_back(random_symmetric_poly(n, 8, rng));
        ++cells;
        auto c1 = commutator_check(n, lambda, r, OpName::Dplus, OpName::K,
                                   {{make_rational(2), OpName::Dplus}}, polys);
        auto c2 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DplusPrime,
                                   {{make_rational(1), OpName::DplusPrime}}, polys);
        auto c3 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DminusPrime,
                                   {{make_rational(-1), OpName::DminusPrime}}, polys);
        auto c4 = commutator_check(n, lambda, r, OpName::DplusPrime, OpName::DminusPrime,
                                   {{make_rational(-2), OpName::KPrime}}, polys);
        if (!(c1.pass && c2.pass && c3.pass && c4.pass)) {
          ok = false;
          note = " commutator failure at N=" + std::to_string(n);
        }
      }
    }
  }

  auto rep = build_ladder_rep(validate_params(5, 1.0, 2), 20);
  int excluded = 0;
  for (const auto& blk : sl2_check(rep)) {
    excluded += blk.excluded_states;
    if (!blk.pass) {
      ok = false;
      note += " sl2 block s=" + std::to_string(blk.s) + " failed";
    }
  }
  for (const auto& id : ladder_commutator_checks(rep))
    if (!id.pass) {
      ok = false;
      note += " " + id.name + " failed";
    }

  long rec_checks = 0;
  for (int n : {4, 5})
    for (int r = 1; r <= n - 1; ++r)
      for (auto lambda : {make_rational(1, 2), make_rational(1), make_rational(2)})
        for (int k = 1; k <= 3; ++k) {
          auto sol = laplace_constraints(n, lambda, r, k);
          Poly pk = sol.polynomial(0);
          for (int n_rad = 0; n_rad <= 3; ++n_rad) {
            ++rec_checks;
            if (!recurrence_check(n, lambda, r, k, n_rad, pk)) {
              ok = false;
              note += " recurrence failure";
            }
          }
        }
  std::ostringstream os;
  os << "SU(1,1) exact on " << cells << " cells x 50 polys; sl(2,C) blocks s<=20 "
     << "(dims, Casimir; " << excluded
     << " documented n_X=1 exclusions in odd blocks); recurrence exact (" << rec_checks
     << " checks)" << note;
  return {8, "operator algebra", ok, os.str()};
}

// ---------------------------------------------------------------------- 9
Criterion criterion9_excited(double scale) {
  long n_samples = std::lround(200000 * scale);
  Grid1D grid = default_grid();
  bool ok = true;
  std::ostringstream os;
  for (auto [nq, kq] : {std::pair{0, 1}, {1, 0}, {0, 2}}) {
    double prev_moment = -1.0;
    os << "(n,k)=(" << nq << "," << kq << "): ";
    for (int r : {1, 2, 3}) {
      auto p = validate_params(4, 1.0, r);
      ChainConfig cfg;
      cfg.seed = 5000 + 100 * nq + 10 * kq + r;
      cfg.n_samples = n_samples;
      cfg.burn_in = 4000;
      cfg.n_chains = 16;
      cfg.target = TargetSpec{true, nq, kq, 0};
      auto est = density_profile(run_chain(p, cfg), grid);
      double dx = grid.step();
      double mass = 0.0, moment = 0.0;
      for (std::size_t t = 0; t < est.values.size(); ++t) {
        mass += est.values[t] * dx;
        moment += est.values[t] * est.axis[t] * est.axis[t] * dx;
      }
      if (std::abs(mass - 4.0) > 0.04) ok = false;
      if (moment <= prev_moment) ok = false;
      prev_moment = moment;
      os << "r" << r << " int=" << mass << " <x^2>=" << moment << "  ";
    }
  }
  os << "(norm to N within 1%, second moment increasing with r)";
  return {9, "excited-state densities", ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  double scale = 1.0;
  std::set<int> only;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--scale") == 0 && a + 1 < argc) scale = std::atof(argv[++a]);
    if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) {
      std::stringstream ss(argv[++a]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::atoi(tok.c_str()));
    }
  }
  auto want = [&](int id) { return only.empty() || only.count(id); };

  std::vector<Criterion> results;
  auto timed = [&](int id, auto&& fn) {
    if (!want(id)) return;
    auto t0 = std::chrono::steady_clock::now();
    results.push_back(fn());
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.back().detail += " [" + std::to_string(dt).substr(0, 6) + "s]";
  };

  timed(1, [] { return criterion1_eigenstate(); });
  timed(2, [&] { return criterion2_tg_density(scale); });
  if (want(3) || want(4)) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Criterion> both;
    criteria_table1_momentum(scale, both);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& c : both) {
      if (!want(c.id)) continue;
      c.detail += " [" + std::to_string(dt / 2).substr(0, 6) + "s]";
      results.push_back(c);
    }
  }
  timed(5, [&] { return criterion5_virial(scale); });
  timed(6, [] { return criterion6_constraint_tables(); });
  timed(7, [] { return criterion7_degeneracy(); });
  timed(8, [] { return criterion8_operator_algebra(); });
  timed(9, [&] { return criterion9_excited(scale); });

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
  bool all = true;
  for (const auto& c : results) {
    std::printf("[%s] criterion %d (%s): %s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
