#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tcsm/estimators.hpp"

using namespace tcsm;

namespace {

SampleBatch sample_ground(const ModelParams& p, long n_samples, std::uint64_t seed,
                          int chains = 2) {
  ChainConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = n_samples;
  cfg.burn_in = 1500;
  cfg.n_chains = chains;
  return run_chain(p, cfg);
}

}  // namespace

TEST_CASE("free-gas density matches the Gaussian profile binwise") {
  auto p = validate_params(5, 0.0, 0);
  auto batch = sample_ground(p, 60000, 42);
  auto est = density_profile(batch, default_grid());
  // n(x) = 5 exp(-x^2)/sqrt(pi), n(0) ~ 2.8209
  int mid = 50;
  CHECK(est.axis[mid] == doctest::Approx(0.0));
  CHECK(est.values[mid] == doctest::Approx(5.0 / std::sqrt(M_PI)).epsilon(0.05));
  long bad = 0;
  for (std::size_t t = 0; t < est.axis.size(); ++t) {
    double x = est.axis[t];
    double expect = 5.0 * std::exp(-x * x) / std::sqrt(M_PI);
    if (std::abs(est.values[t] - expect) > 4.0 * est.errors[t]) ++bad;
  }
  CHECK(bad <= 1);
  // normalization within 1%
  double mass = 0.0;
  for (double v : est.values) mass += v * (est.axis[1] - est.axis[0]);
  CHECK(mass == doctest::Approx(5.0).epsilon(0.01));
}

TEST_CASE("narrow grid raises GridTooNarrow") {
  auto p = validate_params(4, 1.0, 3);
  auto batch = sample_ground(p, 2000, 7);
  Grid1D narrow{-0.8, 0.8, 17};
  CHECK_THROWS_AS(density_profile(batch, narrow), GridTooNarrow);
}

TEST_CASE("obrdm: diagonal reproduces density, symmetric by construction") {
  auto p = validate_params(3, 1.0, 1);
  auto batch = sample_ground(p, 30000, 19, 4);
  Grid1D grid{-4.0, 4.0, 41};
  auto dens = density_profile(batch, grid);
  auto rho = obrdm_from_batch(p, batch, grid);
  int ng = grid.npoints;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      CHECK(rho.value_at(a, b) == rho.value_at(b, a));
  long bad = 0, used = 0;
  for (int t = 0; t < ng; ++t) {
    if (dens.values[t] <= 0.0 || dens.errors[t] <= 0.0) continue;
    ++used;
    double sigma = std::hypot(rho.error_at(t, t), dens.errors[t]);
    if (std::abs(rho.value_at(t, t) - dens.values[t]) > 3.5 * std::max(sigma, 1e-9)) ++bad;
  }
  CHECK(used > 20);
  CHECK(bad <= 2);
  // trace consistency within a few per mille of N
  double tr = 0.0;
  for (int t = 0; t < ng; ++t) tr += rho.value_at(t, t) * grid.step();
  CHECK(tr == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("momentum distribution: free-gas closed form and normalization") {
  auto p = validate_params(4, 0.0, 0);
  auto batch = sample_ground(p, 40000, 23, 4);
  Grid1D grid{-5.0, 5.0, 101};
  auto rho = obrdm_from_batch(p, batch, grid);
  auto nk = momentum_distribution(rho, default_kgrid());
  CHECK(nk.imag_residual < 1e-10);
  // integral = N within 1%
  double dk = nk.axis[1] - nk.axis[0];
  double mass = 0.0;
  for (std::size_t t = 0; t < nk.values.size(); ++t) mass += nk.values[t] * dk;
  // trapezoid endpoint correction
  mass -= 0.5 * dk * (nk.values.front() + nk.values.back());
  CHECK(mass == doctest::Approx(4.0).epsilon(0.01));
  // closed form N e^{-k^2}/sqrt(pi) near the peak
  for (double k : {0.0, 0.5, 1.0}) {
    int idx = static_cast<int>(std::lround((k - nk.axis[0]) / dk));
    double expect = 4.0 * std::exp(-k * k) / std::sqrt(M_PI);
    CHECK(nk.values[idx] == doctest::Approx(expect).epsilon(0.08));
  }
  // exact evenness after symmetrization
  for (std::size_t t = 0; t < nk.values.size(); ++t)
    CHECK(nk.values[t] ==
          doctest::Approx(nk.values[nk.values.size() - 1 - t]).epsilon(1e-10));
}

TEST_CASE("momentum transform rejects asymmetric grids") {
  GridEstimate rho;
  rho.axis = {0.0, 1.0, 2.0};
  rho.axis2 = rho.axis;
  rho.values.assign(9, 1.0);
  rho.errors.assign(9, 0.1);
  CHECK_THROWS_AS(momentum_distribution(rho, default_kgrid()), AsymmetricGrid);
}

TEST_CASE("power-law fit recovers synthetic exponents exactly") {
  GridEstimate slice;
  for (int i = 0; i < 60; ++i) {
    double x = 0.1 + 0.05 * i;
    slice.axis.push_back(x);
    slice.values.push_back(2.0 / std::pow(x, 0.7));
    slice.errors.push_back(0.0);
  }
  auto fit = powerlaw_fit(slice, 0.5, 2.5);
  CHECK(fit.gamma == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.p == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.gamma_err == doctest::Approx(0.0));
  CHECK(fit.p_err == doctest::Approx(0.0));

  // weighted path: constant relative errors keep the exact recovery
  for (auto& e : slice.errors) e = 0.05;
  for (std::size_t i = 0; i < slice.errors.size(); ++i)
    slice.errors[i] = 0.02 * slice.values[i];
  auto wfit = powerlaw_fit(slice, 0.5, 2.5);
  CHECK(wfit.gamma == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(wfit.p == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(wfit.p_err > 0.0);
}

TEST_CASE("power-law fit error paths") {
  GridEstimate slice;
  for (int i = 0; i < 40; ++i) {
    double x = 0.1 * (i + 1);
    slice.axis.push_back(x);
    slice.values.push_back(1.0 / x);
    slice.errors.push_back(0.0);
  }
  CHECK_THROWS_AS(powerlaw_fit(slice, 3.0, 3.2), WindowTooSmall);
  slice.values[10] = -1.0;  // x = 1.1
  CHECK_THROWS_AS(powerlaw_fit(slice, 0.5, 2.5), NonPositiveData);
}

TEST_CASE("excited density: (0,0) reduces to the ground state shape") {
  auto p = validate_params(3, 1.0, 1);
  ChainConfig cfg;
  cfg.seed = 31;
  cfg.n_samples = 30000;
  cfg.burn_in = 1200;
  cfg.n_chains = 4;
  Grid1D grid{-4.0, 4.0, 41};
  auto ground = density_profile(sample_ground(p, 30000, 31, 4), grid);
  auto excited = excited_density(p, TargetSpec{true, 0, 0, 0}, cfg, grid);
  long bad = 0;
  for (int t = 0; t < grid.npoints; ++t) {
    double sigma = std::hypot(ground.errors[t], excited.errors[t]);
    if (sigma == 0.0) continue;
    if (std::abs(ground.values[t] - excited.values[t]) > 4.0 * sigma) ++bad;
  }
  CHECK(bad <= 1);
  double dx = grid.step();
  double mass = 0.0;
  for (double v : excited.values) mass += v * dx;
  CHECK(mass == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("byte-identical reruns with the same seed") {
  auto p = validate_params(3, 0.5, 2);
  auto b1 = sample_ground(p, 5000, 555);
  auto b2 = sample_ground(p, 5000, 555);
  Grid1D grid{-4.0, 4.0, 33};
  auto d1 = density_profile(b1, grid);
  auto d2 = density_profile(b2, grid);
  CHECK(d1.values == d2.values);
  CHECK(d1.errors == d2.errors);
}
