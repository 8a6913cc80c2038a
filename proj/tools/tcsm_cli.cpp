// Command-line driver for the TCSM laboratory.
//
// Subcommands: energy, density, obrdm, momentum, fit, excited, degeneracy,
// constraints, algebra-check, verify, reproduce. Outputs go to
// out/<subcommand>/<timestamp>/ with a manifest recording everything needed
// to reproduce the run bit for bit (data files exclude timestamps). Exit
// codes: 0 success, 1 verification failure, 2 invalid arguments, 3 runtime
// failure. TCSM_THREADS caps chain/solve parallelism.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "tcsm/estimators.hpp"
#include "tcsm/io.hpp"
#include "tcsm/model.hpp"
#include "tcsm/operator_algebra.hpp"
#include "tcsm/sampler.hpp"
#include "tcsm/sympoly.hpp"
#include "tcsm/table_relations.hpp"
#include "tcsm/verification.hpp"
#include "tcsm/version.hpp"
#include "tcsm/wavefunction.hpp"

namespace {

using namespace tcsm;

struct SampleOpts {
  int n = 5;
  double lambda = 1.0;
  int r = 1;
  std::uint64_t seed = 0;
  long samples = 100000;
  long burn = 2000;
  int thin = 1;
  int chains = 2;
  double grid_l = 5.0;
  int grid_points = 101;
  std::string out_base = "out";
  std::string out_dir;
  bool dump_samples = false;
};

void add_model_options(CLI::App* cmd, SampleOpts& o) {
  cmd->add_option("--n", o.n, "particle count N")->required();
  cmd->add_option("--lambda", o.lambda, "coupling strength (>= 0)")->required();
  cmd->add_option("--r", o.r, "interaction range in neighbor indices")->required();
}

void add_sampling_options(CLI::App* cmd, SampleOpts& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (mandatory for sampling)")->required();
  cmd->add_option("--samples", o.samples, "post-thinning samples across chains");
  cmd->add_option("--burn-in", o.burn, "burn-in sweeps per chain");
  cmd->add_option("--thin", o.thin, "sweeps between stored samples");
  cmd->add_option("--chains", o.chains, "number of independent chains");
  cmd->add_option("--grid-l", o.grid_l, "grid half-width in oscillator lengths");
  cmd->add_option("--grid-points", o.grid_points, "grid points per axis");
  cmd->add_option("--out-base", o.out_base, "base output directory");
  cmd->add_option("--out", o.out_dir, "explicit output directory (no timestamp)");
}

ChainConfig chain_config(const SampleOpts& o) {
  ChainConfig cfg;
  cfg.seed = o.seed;
  cfg.n_samples = o.samples;
  cfg.burn_in = o.burn;
  cfg.thinning = o.thin;
  cfg.n_chains = o.chains;
  return cfg;
}

Grid1D grid_of(const SampleOpts& o) { return Grid1D{-o.grid_l, o.grid_l, o.grid_points}; }

void record_params(RunManifest& m, const SampleOpts& o) {
  m.parameters["N"] = o.n;
  m.parameters["lambda"] = o.lambda;
  m.parameters["r"] = o.r;
  m.parameters["samples"] = o.samples;
  m.parameters["burn_in"] = o.burn;
  m.parameters["thinning"] = o.thin;
  m.parameters["chains"] = o.chains;
  m.parameters["grid_l"] = o.grid_l;
  m.parameters["grid_points"] = o.grid_points;
  m.seed = o.seed;
  m.seeded = true;
}

void record_batch(RunManifest& m, const SampleBatch& batch) {
  m.n_samples = batch.n_samples();
  m.acceptance_rate = batch.acceptance_rate;
  m.ess = batch.ess;
}

int run_density(const SampleOpts& o) {
  auto p = validate_params(o.n, o.lambda, o.r);
  OutputWriter out("density", o.out_base, o.out_dir);
  record_params(out.manifest(), o);
  auto batch = run_chain(p, chain_config(o));
  record_batch(out.manifest(), batch);
  auto est = density_profile(batch, grid_of(o));
  out.write_file("density.csv", density_to_csv(est));
  if (o.dump_samples) out.write_file("samples.csv", samples_to_csv(batch));
  out.finalize();
  std::printf("density written to %s\n", out.dir().c_str());
  return 0;
}

int run_obrdm(const SampleOpts& o) {
  auto p = validate_params(o.n, o.lambda, o.r);
  OutputWriter out("obrdm", o.out_base, o.out_dir);
  record_params(out.manifest(), o);
  auto batch = run_chain(p, chain_config(o));
  record_batch(out.manifest(), batch);
  auto dens = density_profile(batch, grid_of(o));
  auto rho = obrdm_from_batch(p, batch, grid_of(o));
  out.write_file("density.csv", density_to_csv(dens));
  out.write_file("obrdm.csv", obrdm_to_csv(rho));
  out.finalize();
  std::printf("obrdm written to %s\n", out.dir().c_str());
  return 0;
}

int run_momentum(const SampleOpts& o, double kmax, int kpoints) {
  auto p = validate_params(o.n, o.lambda, o.r);
  OutputWriter out("momentum", o.out_base, o.out_dir);
  record_params(out.manifest(), o);
  out.manifest().parameters["k_max"] = kmax;
  out.manifest().parameters["k_points"] = kpoints;
  auto batch = run_chain(p, chain_config(o));
  record_batch(out.manifest(), batch);
  auto rho = obrdm_from_batch(p, batch, grid_of(o));
  auto nk = momentum_distribution(rho, Grid1D{-kmax, kmax, kpoints});
  out.write_file("obrdm.csv", obrdm_to_csv(rho));
  out.write_file("nk.csv", momentum_to_csv(nk));
  out.manifest().parameters["imag_residual"] = nk.imag_residual;
  out.finalize();
  std::printf("momentum distribution written to %s (imag residual %.3g)\n",
              out.dir().c_str(), nk.imag_residual);
  return 0;
}

int run_fit(const SampleOpts& o, double xmin, double xmax, bool scan) {
  auto p = validate_params(o.n, o.lambda, o.r);
  OutputWriter out("fit", o.out_base, o.out_dir);
  record_params(out.manifest(), o);
  out.manifest().parameters["xmin"] = xmin;
  out.manifest().parameters["xmax"] = xmax;
  auto batch = run_chain(p, chain_config(o));
  record_batch(out.manifest(), batch);
  auto rho = obrdm_from_batch(p, batch, grid_of(o));
  auto slice = slice_at(rho, 0.0);
  auto fit = powerlaw_fit(slice, xmin, xmax);
  out.write_file("slice.csv", density_to_csv(slice));
  out.write_file("fit.csv", fits_to_csv({{o.r, fit}}));
  if (scan) {
    std::vector<std::pair<int, FitResult>> rows;
    for (double lo : {xmin - 0.25, xmin, xmin + 0.25})
      for (double hi : {xmax - 0.25, xmax, xmax + 0.25})
        rows.emplace_back(o.r, powerlaw_fit(slice, lo, hi));
    out.write_file("fit_sensitivity.csv", fits_to_csv(rows));
  }
  out.finalize();
  std::printf("rho(x,0) ~ gamma/x^p: gamma = %s +- %s, p = %s +- %s\n",
              format_double(fit.gamma).c_str(), format_double(fit.gamma_err).c_str(),
              format_double(fit.p).c_str(), format_double(fit.p_err).c_str());
  return 0;
}

int run_excited(const SampleOpts& o, int nq, int kq, int branch) {
  auto p = validate_params(o.n, o.lambda, o.r);
  OutputWriter out("excited", o.out_base, o.out_dir);
  record_params(out.manifest(), o);
  out.manifest().parameters["n_radial"] = nq;
  out.manifest().parameters["k_degree"] = kq;
  out.manifest().parameters["branch"] = branch;
  TargetSpec target{true, nq, kq, branch};
  ChainConfig cfg = chain_config(o);
  auto est = excited_density(p, target, cfg, grid_of(o));
  out.manifest().n_samples = est.n_samples;
  out.manifest().seeded = true;
  out.write_file("density.csv", density_to_csv(est));
  out.finalize();
  std::printf("excited density (n=%d, k=%d) written to %s\n", nq, kq, out.dir().c_str());
  return 0;
}

int run_degeneracy(int s, const std::string& regime, int n) {
  if (regime == "full" && n < 1) {
    std::fprintf(stderr, "error: --regime full requires --n\n");
    return 2;
  }
  int n_eff = n >= 1 ? n : s + 1;
  ModelParams p{std::max(n_eff, 2), 1.0, regime == "full" ? std::max(n_eff, 2) - 1 : 0};
  auto res = degeneracy(p, s);
  if (n >= 1 && !res.verified_regime)
    std::fprintf(stderr,
                 "warning: s = %d exceeds N = %d; the count lies outside the "
                 "verified constraint regime\n",
                 s, n);
  std::printf("%ld\n", res.value);
  return 0;
}

int run_constraints(int n, int r, const std::string& lambda_text, int k,
                    const std::string& out_base, const std::string& out_dir) {
  Rational lambda = parse_rational(lambda_text);
  if (sgn(lambda) < 0) throw NegativeCoupling("lambda must be >= 0");
  validate_params(n, to_double(lambda), r);
  auto sol = laplace_constraints(n, lambda, r, k);
  auto j = constraint_solution_to_json(sol);
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& rel : table_relation_checks(sol))
    rels.push_back({{"relation", rel.name}, {"pass", rel.pass}});
  j["table_relations"] = rels;
  OutputWriter out("constraints", out_base, out_dir);
  out.manifest().parameters = {{"N", n}, {"r", r}, {"lambda", lambda_text}, {"k", k}};
  out.write_file("constraints.json", j.dump(2) + "\n");
  out.finalize();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_algebra_check(int n, const std::string& lambda_text, int r, int smax,
                      int n_polys, std::uint64_t seed, const std::string& out_base,
                      const std::string& out_dir) {
  Rational lambda = parse_rational(lambda_text);
  auto p = validate_params(n, to_double(lambda), r);
  std::mt19937_64 rng(seed);
  std::vector<Poly> polys;
  for (int t = 0; t < n_polys; ++t) polys.push_back(random_symmetric_poly(n, 8, rng));

  nlohmann::json j;
  j["parameters"] = {{"N", n}, {"lambda", lambda_text}, {"r", r}, {"s_max", smax},
                     {"polynomials", n_polys}, {"seed", seed}};
  bool all_pass = true;
  auto add_identity = [&](const IdentityReport& rep) {
    j["identities"].push_back({{"name", rep.name},
                               {"pass", rep.pass},
                               {"cases_checked", rep.cases_checked},
                               {"cases_excluded", rep.cases_excluded},
                               {"max_residual", rep.max_residual},
                               {"note", rep.note}});
    all_pass = all_pass && rep.pass;
  };
  add_identity(commutator_check(n, lambda, r, OpName::Dplus, OpName::K,
                                {{make_rational(2), OpName::Dplus}}, polys));
  add_identity(commutator_check(n, lambda, r, OpName::KPrime, OpName::DplusPrime,
                                {{make_rational(1), OpName::DplusPrime}}, polys));
  add_identity(commutator_check(n, lambda, r, OpName::KPrime, OpName::DminusPrime,
                                {{make_rational(-1), OpName::DminusPrime}}, polys));
  add_identity(commutator_check(n, lambda, r, OpName::DplusPrime, OpName::DminusPrime,
                                {{make_rational(-2), OpName::KPrime}}, polys));
  for (int deg = 1; deg <= 3; ++deg)
    add_identity(euler_similarity_check(n, lambda, r,
                                        monomial_symmetric(Partition{deg}, n)));

  auto rep = build_ladder_rep(p, smax);
  j["ladder_convention"] = rep.convention;
  for (const auto& id : ladder_commutator_checks(rep)) add_identity(id);
  for (const auto& blk : sl2_check(rep)) {
    j["sl2_blocks"].push_back({{"s", blk.s},
                               {"dimension", blk.dimension},
                               {"expected_dimension", blk.expected_dimension},
                               {"commutator_residual", blk.commutator_residual},
                               {"casimir_exact", blk.casimir_exact},
                               {"excluded_states", blk.excluded_states},
                               {"pass", blk.pass}});
    all_pass = all_pass && blk.pass;
  }
  bool deg_equiv = true;
  for (int s = 0; s <= 40; ++s) deg_equiv = deg_equiv && ladder_degeneracy_equivalence(s);
  j["degeneracy_equivalence_s_le_40"] = deg_equiv;
  all_pass = all_pass && deg_equiv;
  j["all_pass"] = all_pass;

  OutputWriter out("algebra-check", out_base, out_dir);
  out.manifest().parameters = j["parameters"];
  out.write_file("algebra.json", j.dump(2) + "\n");
  out.finalize();
  std::cout << j.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int run_verify(bool skip_mc, std::uint64_t seed, long samples) {
  VerifyOptions opt;
  opt.include_mc = !skip_mc;
  opt.seed = seed;
  opt.mc_samples = samples;
  auto results = run_verification(opt);
  bool all = true;
  for (const auto& res : results) {
    std::printf("[%s] %s: %s\n", res.pass ? "PASS" : "FAIL", res.name.c_str(),
                res.detail.c_str());
    all = all && res.pass;
  }
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// reproduce: regenerates the data behind each figure/table.

int reproduce(const std::string& target, std::uint64_t seed, long samples,
              const std::string& out_base, const std::string& out_dir) {
  OutputWriter out("reproduce-" + target, out_base, out_dir);
  out.manifest().parameters = {{"target", target}, {"samples", samples}};
  out.manifest().seed = seed;
  out.manifest().seeded = true;

  auto ground_batch = [&](int n, double lambda, int r, std::uint64_t s, long count) {
    ChainConfig cfg;
    cfg.seed = s;
    cfg.n_samples = count;
    cfg.burn_in = 3000;
    cfg.n_chains = 4;
    return run_chain(validate_params(n, lambda, r), cfg);
  };
  Grid1D grid = default_grid();

  if (target == "fig1") {
    // panel (a): density vs lambda at fixed range; the source text and the
    // caption disagree on N (4 vs 5), so both parameter sets are emitted
    for (int n : {4, 5}) {
      for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
        auto est = density_profile(ground_batch(n, lambda, 2, seed, samples), grid);
        char name[64];
        std::snprintf(name, sizeof(name), "density_N%d_r2_lambda%g.csv", n, lambda);
        out.write_file(name, density_to_csv(est));
      }
    }
    // panel (b): N=5, lambda=1, r in {1,2,4}
    for (int r : {1, 2, 4}) {
      auto est = density_profile(ground_batch(5, 1.0, r, seed + r, samples), grid);
      char name[64];
      std::snprintf(name, sizeof(name), "density_N5_lambda1_r%d.csv", r);
      out.write_file(name, density_to_csv(est));
    }
  } else if (target == "fig2") {
    for (int r : {1, 2, 3}) {
      auto p = validate_params(5, 1.0, r);
      auto rho = obrdm_from_batch(p, ground_batch(5, 1.0, r, seed + r, samples), grid);
      char name[64];
      std::snprintf(name, sizeof(name), "obrdm_N5_lambda1_r%d.csv", r);
      out.write_file(name, obrdm_to_csv(rho));
    }
  } else if (target == "fig3") {
    for (int r : {1, 2, 3, 4}) {
      auto p = validate_params(5, 1.0, r);
      auto rho = obrdm_from_batch(p, ground_batch(5, 1.0, r, seed + r, samples), grid);
      auto slice = slice_at(rho, 0.0);
      auto nk = momentum_distribution(rho, default_kgrid());
      char name[64];
      std::snprintf(name, sizeof(name), "obrdm_slice_N5_lambda1_r%d.csv", r);
      out.write_file(name, density_to_csv(slice));
      std::snprintf(name, sizeof(name), "nk_N5_lambda1_r%d.csv", r);
      out.write_file(name, momentum_to_csv(nk));
    }
  } else if (target == "fig4") {
    for (auto [nq, kq] : {std::pair{0, 1}, {1, 0}, {0, 2}}) {
      for (int r : {1, 2, 3}) {
        auto p = validate_params(4, 1.0, r);
        ChainConfig cfg;
        cfg.seed = seed + 100 * nq + 10 * kq + r;
        cfg.n_samples = samples;
        cfg.burn_in = 3000;
        cfg.n_chains = 16;
        auto est = excited_density(p, TargetSpec{true, nq, kq, 0}, cfg, grid);
        char name[64];
        std::snprintf(name, sizeof(name), "density_N4_lambda1_n%dk%d_r%d.csv", nq, kq, r);
        out.write_file(name, density_to_csv(est));
      }
    }
  } else if (target == "table1") {
    std::vector<std::pair<int, FitResult>> fits;
    std::vector<std::pair<int, FitResult>> scan_rows;
    for (int r : {1, 2, 3, 4}) {
      auto p = validate_params(5, 1.0, r);
      auto rho = obrdm_from_batch(p, ground_batch(5, 1.0, r, seed + r, samples), grid);
      auto slice = slice_at(rho, 0.0);
      fits.emplace_back(r, powerlaw_fit(slice, kFitWindowLo, kFitWindowHi));
      for (double lo : {kFitWindowLo - 0.25, kFitWindowLo, kFitWindowLo + 0.25})
        for (double hi : {kFitWindowHi - 0.25, kFitWindowHi, kFitWindowHi + 0.25})
          scan_rows.emplace_back(r, powerlaw_fit(slice, lo, hi));
      char name[64];
      std::snprintf(name, sizeof(name), "obrdm_slice_N5_lambda1_r%d.csv", r);
      out.write_file(name, density_to_csv(slice));
    }
    out.write_file("table1.csv", fits_to_csv(fits));
    out.write_file("table1_window_sensitivity.csv", fits_to_csv(scan_rows));
  } else if (target == "table2") {
    nlohmann::json summary = nlohmann::json::array();
    for (int n : {4, 5, 6}) {
      for (int r : {1, n / 2, n - 1}) {
        for (const char* ls : {"1/3", "1", "7/2"}) {
          Rational lambda = parse_rational(ls);
          for (int k = 1; k <= std::min(5, n); ++k) {
            auto sol = laplace_constraints(n, lambda, r, k);
            bool all = true;
            for (const auto& rel : table_relation_checks(sol)) all = all && rel.pass;
            summary.push_back({{"N", n}, {"r", r}, {"lambda", ls}, {"k", k},
                               {"dimension", sol.dimension()},
                               {"relations_pass", all}});
            if (n == 6 && std::string(ls) == "1") {
              char name[64];
              std::snprintf(name, sizeof(name), "constraints_N%d_r%d_k%d.json", n, r, k);
              out.write_file(name, constraint_solution_to_json(sol).dump(2) + "\n");
            }
          }
        }
      }
    }
    out.write_file("table2_checks.json", summary.dump(2) + "\n");
  } else {
    std::fprintf(stderr, "unknown reproduce target '%s'\n", target.c_str());
    return 2;
  }
  out.finalize();
  std::printf("%s data written to %s\n", target.c_str(), out.dir().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated Calogero-Sutherland model laboratory (oscillator units)"};
  app.set_config("--config", "", "flat key=value config file; command-line flags win");
  app.require_subcommand(1);

  int rc = 0;
  SampleOpts o;

  auto* energy = app.add_subcommand("energy", "closed-form ground-state energy");
  bool relative = false;
  add_model_options(energy, o);
  energy->add_flag("--relative", relative, "energy of the relative motion (E0 - 1/2)");
  energy->callback([&] {
    auto p = validate_params(o.n, o.lambda, o.r);
    double e = relative ? relative_ground_energy(p) : ground_state_energy(p);
    std::printf("%s\n", format_double(e).c_str());
  });

  auto* density = app.add_subcommand("density", "Monte Carlo ground-state density profile");
  add_model_options(density, o);
  add_sampling_options(density, o);
  density->add_flag("--dump-samples", o.dump_samples, "also write raw samples CSV");
  density->callback([&] { rc = run_density(o); });

  auto* obrdm = app.add_subcommand("obrdm", "one-body reduced density matrix");
  add_model_options(obrdm, o);
  add_sampling_options(obrdm, o);
  obrdm->callback([&] { rc = run_obrdm(o); });

  double kmax = 10.0;
  int kpoints = 201;
  auto* momentum = app.add_subcommand("momentum", "momentum distribution n(k)");
  add_model_options(momentum, o);
  add_sampling_options(momentum, o);
  momentum->add_option("--k-max", kmax, "momentum grid half-width");
  momentum->add_option("--k-points", kpoints, "momentum grid points");
  momentum->callback([&] { rc = run_momentum(o, kmax, kpoints); });

  double xmin = kFitWindowLo, xmax = kFitWindowHi;
  bool scan = false;
  auto* fit = app.add_subcommand("fit", "power-law fit of the OBRDM tail rho(x,0)");
  add_model_options(fit, o);
  add_sampling_options(fit, o);
  fit->add_option("--xmin", xmin, "fit window lower edge");
  fit->add_option("--xmax", xmax, "fit window upper edge");
  fit->add_flag("--scan", scan, "emit the +-0.25 window sensitivity scan");
  fit->callback([&] { rc = run_fit(o, xmin, xmax, scan); });

  int nq = 0, kq = 1, branch = 0;
  auto* excited = app.add_subcommand("excited", "density of an excited state (n,k)");
  add_model_options(excited, o);
  add_sampling_options(excited, o);
  excited->add_option("--nq", nq, "radial quantum number n");
  excited->add_option("--kq", kq, "angular degree k");
  excited->add_option("--branch", branch, "nullspace branch for r = N-1, k >= 3");
  excited->callback([&] { rc = run_excited(o, nq, kq, branch); });

  int deg_s = 0, deg_n = 0;
  std::string regime = "truncated";
  auto* degen = app.add_subcommand("degeneracy", "level degeneracy d(s)");
  degen->add_option("--s", deg_s, "excitation level s = 2n + k")->required();
  degen->add_option("--regime", regime, "truncated (r < N-1) or full (r = N-1)")
      ->check(CLI::IsMember({"truncated", "full"}));
  degen->add_option("--n", deg_n, "particle count (required for full regime)");
  degen->callback([&] { rc = run_degeneracy(deg_s, regime, deg_n); });

  int c_n = 4, c_r = 2, c_k = 2;
  std::string c_lambda = "1";
  auto* constraints = app.add_subcommand("constraints",
                                         "exact Laplace-equation constraint solve");
  constraints->add_option("--n", c_n, "particle count N")->required();
  constraints->add_option("--r", c_r, "interaction range")->required();
  constraints->add_option("--lambda", c_lambda, "coupling as a rational, e.g. 7/2")
      ->required();
  constraints->add_option("--k", c_k, "polynomial degree k (1 <= k <= N)")->required();
  constraints->add_option("--out-base", o.out_base, "base output directory");
  constraints->add_option("--out", o.out_dir, "explicit output directory");
  constraints->callback(
      [&] { rc = run_constraints(c_n, c_r, c_lambda, c_k, o.out_base, o.out_dir); });

  int a_n = 4, a_r = 2, a_smax = 20, a_polys = 50;
  std::uint64_t a_seed = 1;
  std::string a_lambda = "1";
  auto* algebra = app.add_subcommand("algebra-check", "operator-algebra verification");
  algebra->add_option("--n", a_n, "particle count N");
  algebra->add_option("--lambda", a_lambda, "coupling as a rational");
  algebra->add_option("--r", a_r, "interaction range");
  algebra->add_option("--smax", a_smax, "ladder basis truncation");
  algebra->add_option("--polys", a_polys, "random polynomials per identity");
  algebra->add_option("--seed", a_seed, "RNG seed for test polynomials");
  algebra->add_option("--out-base", o.out_base, "base output directory");
  algebra->add_option("--out", o.out_dir, "explicit output directory");
  algebra->callback([&] {
    rc = run_algebra_check(a_n, a_lambda, a_r, a_smax, a_polys, a_seed, o.out_base,
                           o.out_dir);
  });

  bool skip_mc = false;
  std::uint64_t v_seed = 20240901;
  long v_samples = 20000;
  auto* verify = app.add_subcommand("verify", "run the full invariant suite");
  verify->add_flag("--skip-mc", skip_mc, "skip Monte Carlo checks");
  verify->add_option("--seed", v_seed, "RNG seed");
  verify->add_option("--samples", v_samples, "samples per Monte Carlo check");
  verify->callback([&] { rc = run_verify(skip_mc, v_seed, v_samples); });

  std::string target;
  std::uint64_t r_seed = 20240901;
  long r_samples = 0;
  auto* repro = app.add_subcommand("reproduce", "regenerate figure/table data files");
  repro->add_option("target", target, "fig1|fig2|fig3|fig4|table1|table2")->required();
  repro->add_option("--seed", r_seed, "RNG seed");
  repro->add_option("--samples", r_samples, "samples per dataset (0 = per-target default)");
  repro->add_option("--out-base", o.out_base, "base output directory");
  repro->add_option("--out", o.out_dir, "explicit output directory");
  repro->callback([&] {
    long def = (target == "fig1") ? 400000 : (target == "fig4") ? 200000 : 200000;
    rc = reproduce(target, r_seed, r_samples > 0 ? r_samples : def, o.out_base, o.out_dir);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const tcsm::RangeOutOfBounds& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const tcsm::NegativeCoupling& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return rc;
}
