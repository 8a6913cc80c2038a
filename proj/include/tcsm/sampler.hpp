#pragma once

// Metropolis random-walk sampling of |Psi|^2 for the symmetrized ground or
// excited states. Proposals are single-coordinate Gaussian moves sweeping
// all N coordinates per step; the step size is adapted toward 40%
// acceptance during burn-in and then frozen, which preserves detailed
// balance for the production phase. Sampling runs in unconstrained
// coordinates and the target is evaluated through the sorting convention,
// so the chain moves freely between sectors (the quantum fluid, not the
// pinned chain).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "tcsm/errors.hpp"
#include "tcsm/model.hpp"
#include "tcsm/rng.hpp"
#include "tcsm/wavefunction.hpp"

namespace tcsm {

struct TargetSpec {
  bool excited = false;
  int n = 0;       // radial quantum number
  int k = 0;       // angular degree
  int branch = 0;  // nullspace branch for r = N-1, k >= 3
};

struct ChainConfig {
  std::uint64_t seed = 1;
  long n_samples = 10000;  // total post-thinning samples across all chains
  long burn_in = 2000;     // sweeps per chain
  int thinning = 1;        // sweeps between stored samples
  double step_size = 0.5;  // initial proposal width
  int n_chains = 1;
  TargetSpec target;
};

// Metropolis samples carry unit weights; no weight array is stored.
struct SampleBatch {
  int n_particles = 0;
  int n_chains = 1;
  long per_chain = 0;          // samples stored per chain
  std::vector<double> coords;  // sample-major, n_particles per sample
  double acceptance_rate = 0.0;
  double ess = 0.0;

  long n_samples() const {
    return n_particles == 0 ? 0 : static_cast<long>(coords.size()) / n_particles;
  }
  std::span<const double> sample(long s) const {
    return {coords.data() + s * n_particles, static_cast<std::size_t>(n_particles)};
  }
};

inline unsigned thread_cap() {
  if (const char* env = std::getenv("TCSM_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(chain_index) for every chain, at most thread_cap() at a time.
// Chains write into disjoint buffers, so the result is schedule-independent.
template <typename Fn>
void parallel_for_chains(int n_chains, Fn&& fn) {
  unsigned cap = std::min<unsigned>(thread_cap(), n_chains);
  if (cap <= 1) {
    for (int c = 0; c < n_chains; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < cap; ++t)
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < n_chains; c = next.fetch_add(1)) fn(c);
    });
  for (auto& th : pool) th.join();
}

// Integrated autocorrelation time of a scalar series with Sokal's adaptive
// window (smallest W with W >= c * tau(W), c = 6). Returns the series length
// when the variance vanishes.
inline double integrated_autocorr_time(std::span<const double> series) {
  long n = static_cast<long>(series.size());
  if (n < 2) return static_cast<double>(n);
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  var /= n;
  if (var == 0.0) return static_cast<double>(n);
  double tau = 1.0;
  for (long w = 1; w < n; ++w) {
    double acf = 0.0;
    for (long t = 0; t + w < n; ++t)
      acf += (series[t] - mean) * (series[t + w] - mean);
    acf /= (n - w) * var;
    tau += 2.0 * acf;
    if (w >= 6.0 * tau) break;
    if (w > 1000) break;  // guard for pathological series
  }
  return std::max(tau, 1.0);
}

struct BlockingEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Flyvbjerg-Petersen blocking: halve the series repeatedly and take the
// largest naive error among levels that still have >= 32 blocks.
inline BlockingEstimate blocking_error(std::span<const double> series) {
  BlockingEstimate out;
  std::vector<double> data(series.begin(), series.end());
  long n = static_cast<long>(data.size());
  if (n == 0) return out;
  double mean = 0.0;
  for (double v : data) mean += v;
  out.mean = mean / n;
  while (static_cast<long>(data.size()) >= 32) {
    long m = static_cast<long>(data.size());
    double mu = 0.0, var = 0.0;
    for (double v : data) mu += v;
    mu /= m;
    for (double v : data) var += (v - mu) * (v - mu);
    var /= (m - 1);
    out.std_error = std::max(out.std_error, std::sqrt(var / m));
    std::vector<double> next(m / 2);
    for (long t = 0; t < m / 2; ++t) next[t] = 0.5 * (data[2 * t] + data[2 * t + 1]);
    data.swap(next);
  }
  return out;
}

namespace detail {

struct LogTarget {
  const ModelParams* p;
  const ExcitedLabel* label;  // null for the ground state
  mutable std::vector<double> scratch;

  double operator()(std::span<const double> y) const {
    if (label) return log_abs_excited_symmetrized(*p, *label, y);
    scratch.assign(y.begin(), y.end());
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    return log_amplitude_sorted(*p, scratch.data());
  }
};

struct ChainResult {
  std::vector<double> coords;
  long accepted = 0;
  long proposed = 0;
  double ess = 1.0;
};

inline ChainResult run_single_chain(const ModelParams& p, const ChainConfig& cfg,
                                    const LogTarget& target, std::uint64_t chain_seed,
                                    long samples_wanted) {
  Rng rng(chain_seed);
  int n = p.n;
  double e_target = ground_state_energy(p);
  if (cfg.target.excited) e_target += 2 * cfg.target.n + cfg.target.k;
  double start_scale = 1.5 * std::sqrt(std::max(1.0, e_target / n));

  std::vector<double> x(n);
  double logw = -std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 200 && !std::isfinite(logw); ++attempt) {
    for (int i = 0; i < n; ++i) x[i] = start_scale * rng.normal();
    logw = 2.0 * target(x);
  }
  if (!std::isfinite(logw))
    throw NonFiniteAmplitude("could not find a finite-weight starting point");

  double step = cfg.step_size;
  auto sweep = [&](long& acc, long& tot) {
    for (int i = 0; i < n; ++i) {
      double old = x[i];
      x[i] = old + step * rng.normal();
      double cand = 2.0 * target(x);
      ++tot;
      if (std::isnan(cand) || cand == std::numeric_limits<double>::infinity())
        throw NonFiniteAmplitude("target evaluated non-finite during sampling");
      bool accept = false;
      if (cand >= logw) {
        accept = true;
      } else {
        accept = std::log(rng.uniform() + 1e-300) < cand - logw;
      }
      if (accept) {
        logw = cand;
        ++acc;
      } else {
        x[i] = old;
      }
    }
  };

  // burn-in with step adaptation toward 40% acceptance, frozen afterwards
  long window_acc = 0, window_tot = 0;
  for (long s = 0; s < cfg.burn_in; ++s) {
    sweep(window_acc, window_tot);
    if ((s + 1) % 50 == 0 || s + 1 == cfg.burn_in) {
      double rate = window_tot ? double(window_acc) / window_tot : 0.0;
      step *= std::clamp(std::exp(rate - 0.40), 0.8, 1.25);
      step = std::clamp(step, 1e-3, 10.0);
      window_acc = window_tot = 0;
    }
  }

  ChainResult res;
  res.coords.reserve(samples_wanted * n);
  std::vector<double> rho2_series;
  rho2_series.reserve(samples_wanted);
  for (long s = 0; s < samples_wanted; ++s) {
    for (int t = 0; t < cfg.thinning; ++t) sweep(res.accepted, res.proposed);
    res.coords.insert(res.coords.end(), x.begin(), x.end());
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    rho2_series.push_back(r2);
  }
  double tau = integrated_autocorr_time(rho2_series);
  res.ess = rho2_series.empty() ? 0.0 : std::max(1.0, rho2_series.size() / tau);
  return res;
}

}  // namespace detail

// Samples |Psi|^2 for the configured target. Deterministic given the seed:
// chain c uses seed + c and chains are merged in index order, so the result
// is independent of thread scheduling.
inline SampleBatch run_chain(const ModelParams& p, const ChainConfig& cfg) {
  if (cfg.n_samples <= 0) throw Error("n_samples must be positive");
  if (cfg.thinning < 1) throw Error("thinning must be >= 1");
  if (cfg.n_chains < 1) throw Error("n_chains must be >= 1");
  if (!(cfg.step_size > 0)) throw Error("step size must be positive");

  ExcitedLabel label;
  detail::LogTarget target{&p, nullptr, {}};
  if (cfg.target.excited) {
    label = make_excited_label(p, cfg.target.n, cfg.target.k, cfg.target.branch);
    target.label = &label;
  }

  long per_chain = (cfg.n_samples + cfg.n_chains - 1) / cfg.n_chains;
  std::vector<detail::ChainResult> results(cfg.n_chains);
  std::vector<std::string> failures(cfg.n_chains);
  parallel_for_chains(cfg.n_chains, [&](int c) {
    try {
      detail::LogTarget local = target;  // per-thread scratch buffer
      results[c] = detail::run_single_chain(p, cfg, local, cfg.seed + c, per_chain);
    } catch (const std::exception& e) {
      failures[c] = e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw NonFiniteAmplitude(f);

  SampleBatch batch;
  batch.n_particles = p.n;
  batch.n_chains = cfg.n_chains;
  batch.per_chain = per_chain;
  long acc = 0, tot = 0;
  for (const auto& r : results) {
    batch.coords.insert(batch.coords.end(), r.coords.begin(), r.coords.end());
    acc += r.accepted;
    tot += r.proposed;
    batch.ess += r.ess;
  }
  batch.acceptance_rate = tot ? double(acc) / tot : 0.0;
  if (batch.acceptance_rate < 0.1 || batch.acceptance_rate > 0.9)
    throw AdaptationFailed("post-adaptation acceptance rate " +
                           std::to_string(batch.acceptance_rate) +
                           " outside [0.1, 0.9]");
  return batch;
}

struct DiagnosticsReport {
  double acceptance_rate = 0.0;
  double tau_int = 0.0;
  double ess = 0.0;
  struct Observable {
    std::string name;
    double mean = 0.0;
    double std_error = 0.0;
  };
  std::vector<Observable> observables;
};

// Acceptance, pooled autocorrelation time, effective sample size and
// blocking errors for the default registered observables (sum x_i^2, sum x_i).
inline DiagnosticsReport diagnostics(const SampleBatch& batch) {
  long total = batch.n_samples();
  if (total < 100)
    throw InsufficientSamples("need at least 100 post-thinning samples, have " +
                              std::to_string(total));
  DiagnosticsReport rep;
  rep.acceptance_rate = batch.acceptance_rate;

  auto series_of = [&](auto&& fn) {
    std::vector<double> s(total);
    for (long t = 0; t < total; ++t) s[t] = fn(batch.sample(t));
    return s;
  };
  std::vector<double> rho2 = series_of([](std::span<const double> x) {
    double v = 0.0;
    for (double xi : x) v += xi * xi;
    return v;
  });
  std::vector<double> dipole = series_of([](std::span<const double> x) {
    double v = 0.0;
    for (double xi : x) v += xi;
    return v;
  });

  double tau_weighted = 0.0;
  double ess_total = 0.0;
  for (int c = 0; c < batch.n_chains; ++c) {
    long lo = c * batch.per_chain;
    long hi = std::min<long>(total, lo + batch.per_chain);
    if (hi <= lo) continue;
    std::span<const double> chain(rho2.data() + lo, static_cast<std::size_t>(hi - lo));
    double tau = integrated_autocorr_time(chain);
    tau_weighted += tau * (hi - lo);
    ess_total += (hi - lo) / tau;
  }
  rep.tau_int = tau_weighted / total;
  rep.ess = std::max(1.0, ess_total);

  auto chainwise_blocking = [&](const std::vector<double>& series) {
    double mean = 0.0, var = 0.0;
    int used = 0;
    for (int c = 0; c < batch.n_chains; ++c) {
      long lo = c * batch.per_chain;
      long hi = std::min<long>(total, lo + batch.per_chain);
      if (hi <= lo) continue;
      auto est = blocking_error(
          std::span<const double>(series.data() + lo, static_cast<std::size_t>(hi - lo)));
      mean += est.mean;
      var += est.std_error * est.std_error;
      ++used;
    }
    return DiagnosticsReport::Observable{"", mean / used, std::sqrt(var) / used};
  };
  auto obs1 = chainwise_blocking(rho2);
  obs1.name = "sum_x2";
  auto obs2 = chainwise_blocking(dipole);
  obs2.name = "sum_x";
  rep.observables = {obs1, obs2};
  return rep;
}

}  // namespace tcsm
