#include <doctest.h>

#include <cmath>

#include "tcsm/sampler.hpp"

using namespace tcsm;

TEST_CASE("determinism: identical config gives bit-identical streams") {
  auto p = validate_params(3, 1.0, 2);
  ChainConfig cfg;
  cfg.seed = 77;
  cfg.n_samples = 500;
  cfg.burn_in = 200;
  cfg.n_chains = 2;
  auto b1 = run_chain(p, cfg);
  auto b2 = run_chain(p, cfg);
  CHECK(b1.coords == b2.coords);
  CHECK(b1.acceptance_rate == b2.acceptance_rate);
}

TEST_CASE("harmonic limit: per-particle <x^2> = 1/2") {
  auto p = validate_params(5, 0.0, 0);
  ChainConfig cfg;
  cfg.seed = 3;
  cfg.n_samples = 20000;
  cfg.burn_in = 1000;
  auto batch = run_chain(p, cfg);
  CHECK(batch.acceptance_rate > 0.2);
  CHECK(batch.acceptance_rate < 0.7);
  auto rep = diagnostics(batch);
  double mean = rep.observables[0].mean / p.n;   // per particle
  double err = rep.observables[0].std_error / p.n;
  CHECK(std::abs(mean - 0.5) < 3.0 * err);
}

TEST_CASE("single particle reproduces oscillator moments") {
  auto p = validate_params(1, 0.0, 0);
  ChainConfig cfg;
  cfg.seed = 5;
  cfg.n_samples = 20000;
  cfg.burn_in = 1000;
  auto batch = run_chain(p, cfg);
  double x2 = 0.0, x4 = 0.0;
  long total = batch.n_samples();
  for (long s = 0; s < total; ++s) {
    double x = batch.sample(s)[0];
    x2 += x * x;
    x4 += x * x * x * x;
  }
  x2 /= total;
  x4 /= total;
  auto rep = diagnostics(batch);
  double err2 = rep.observables[0].std_error;
  CHECK(std::abs(x2 - 0.5) < 3.5 * err2);
  CHECK(x4 == doctest::Approx(0.75).epsilon(0.1));
}

TEST_CASE("virial identity <sum x^2> = E0 for an interacting cell") {
  auto p = validate_params(5, 1.0, 4);
  ChainConfig cfg;
  cfg.seed = 11;
  cfg.n_samples = 30000;
  cfg.burn_in = 2000;
  cfg.n_chains = 2;
  auto batch = run_chain(p, cfg);
  auto rep = diagnostics(batch);
  double e0 = ground_state_energy(p);
  CHECK(std::abs(rep.observables[0].mean - e0) < 3.0 * rep.observables[0].std_error);
}

TEST_CASE("chains with distinct seeds agree within mutual error bars") {
  auto p = validate_params(4, 0.5, 2);
  ChainConfig cfg;
  cfg.seed = 100;
  cfg.n_samples = 15000;
  cfg.burn_in = 1500;
  auto b1 = run_chain(p, cfg);
  cfg.seed = 20000;
  auto b2 = run_chain(p, cfg);
  auto r1 = diagnostics(b1);
  auto r2 = diagnostics(b2);
  double diff = std::abs(r1.observables[0].mean - r2.observables[0].mean);
  double err = std::hypot(r1.observables[0].std_error, r2.observables[0].std_error);
  CHECK(diff < 3.5 * err);
}

TEST_CASE("proposal tie guard: accepted configurations keep pairwise gaps") {
  auto p = validate_params(4, 0.0, 0);  // no pair repulsion at all
  ChainConfig cfg;
  cfg.seed = 9;
  cfg.n_samples = 5000;
  cfg.burn_in = 500;
  auto batch = run_chain(p, cfg);
  for (long s = 0; s < batch.n_samples(); ++s) {
    auto x = batch.sample(s);
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      CHECK(v[i + 1] - v[i] >= kCoincidenceTol);
  }
}

TEST_CASE("diagnostics on synthetic input") {
  SampleBatch iid;
  iid.n_particles = 1;
  iid.n_chains = 1;
  Rng rng(123);
  iid.per_chain = 5000;
  for (long s = 0; s < iid.per_chain; ++s) iid.coords.push_back(rng.normal());
  iid.acceptance_rate = 0.5;
  auto rep = diagnostics(iid);
  CHECK(rep.tau_int == doctest::Approx(1.0).epsilon(0.15));
  CHECK(rep.ess > 0.7 * iid.per_chain);

  SampleBatch constant;
  constant.n_particles = 1;
  constant.n_chains = 1;
  constant.per_chain = 500;
  constant.coords.assign(500, 1.25);
  auto crep = diagnostics(constant);
  CHECK(crep.ess == doctest::Approx(1.0));

  SampleBatch tiny;
  tiny.n_particles = 1;
  tiny.n_chains = 1;
  tiny.per_chain = 50;
  tiny.coords.assign(50, 0.0);
  CHECK_THROWS_AS(diagnostics(tiny), InsufficientSamples);
}

TEST_CASE("excited target sampling smoke test") {
  auto p = validate_params(4, 1.0, 2);
  ChainConfig cfg;
  cfg.seed = 21;
  cfg.n_samples = 8000;
  cfg.burn_in = 800;
  cfg.n_chains = 16;
  cfg.target = TargetSpec{true, 0, 1, 0};
  auto batch = run_chain(p, cfg);
  auto rep = diagnostics(batch);
  CHECK(rep.ess > 100);
  CHECK(std::isfinite(rep.observables[0].mean));
  // virial for the excited eigenstate: <sum x^2> = E0 + 2n + k
  double expect = ground_state_energy(p) + 1.0;
  CHECK(std::abs(rep.observables[0].mean - expect) < 4.0 * rep.observables[0].std_error);
}
