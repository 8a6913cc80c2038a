#pragma once

// Persistence: CSV writers (locale-free, shortest round-trip doubles), the
// run manifest, FNV-1a digests and the flat key=value config format. CSV
// data files are byte-identical across reruns with the same inputs; wall
// time and timestamps live only in the manifest and directory name.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcsm/errors.hpp"
#include "tcsm/estimators.hpp"
#include "tcsm/rng.hpp"
#include "tcsm/sampler.hpp"
#include "tcsm/sympoly.hpp"
#include "tcsm/version.hpp"

namespace tcsm {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("double formatting failed");
  return std::string(buf, ptr);
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& data) {
  std::ostringstream os;
  os << std::hex << fnv1a64(data);
  return os.str();
}

// --------------------------------------------------------------------------
// CSV serialization.

inline std::string density_to_csv(const GridEstimate& est) {
  std::string out = "x,n,err\n";
  for (std::size_t i = 0; i < est.axis.size(); ++i)
    out += format_double(est.axis[i]) + "," + format_double(est.values[i]) + "," +
           format_double(est.errors[i]) + "\n";
  return out;
}

inline std::string obrdm_to_csv(const GridEstimate& est) {
  std::string out = "x,xp,rho,err\n";
  int ng = static_cast<int>(est.axis.size());
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      out += format_double(est.axis[a]) + "," + format_double(est.axis2[b]) + "," +
             format_double(est.value_at(a, b)) + "," + format_double(est.error_at(a, b)) +
             "\n";
  return out;
}

inline std::string momentum_to_csv(const GridEstimate& est) {
  std::string out = "k,nk,err\n";
  for (std::size_t i = 0; i < est.axis.size(); ++i)
    out += format_double(est.axis[i]) + "," + format_double(est.values[i]) + "," +
           format_double(est.errors[i]) + "\n";
  return out;
}

inline std::string fits_to_csv(const std::vector<std::pair<int, FitResult>>& fits) {
  std::string out = "r,gamma,gamma_err,p,p_err,xmin,xmax\n";
  for (const auto& [r, f] : fits)
    out += std::to_string(r) + "," + format_double(f.gamma) + "," +
           format_double(f.gamma_err) + "," + format_double(f.p) + "," +
           format_double(f.p_err) + "," + format_double(f.xmin) + "," +
           format_double(f.xmax) + "\n";
  return out;
}

inline std::string samples_to_csv(const SampleBatch& batch) {
  std::string out = "chain,step";
  for (int i = 1; i <= batch.n_particles; ++i) out += ",x" + std::to_string(i);
  out += "\n";
  long total = batch.n_samples();
  for (long s = 0; s < total; ++s) {
    long chain = s / batch.per_chain;
    long step = s % batch.per_chain;
    out += std::to_string(chain) + "," + std::to_string(step);
    for (double v : batch.sample(s)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

// --------------------------------------------------------------------------
// JSON serialization for exact-arithmetic outputs.

inline nlohmann::json constraint_solution_to_json(const ConstraintSolution& sol) {
  nlohmann::json j;
  j["N"] = sol.n;
  j["r"] = sol.range;
  j["lambda"] = format_rational(sol.lambda);
  j["k"] = sol.k;
  j["regime"] = sol.regime == ConstraintRegime::FullRange ? "full" : "truncated";
  j["dimension"] = sol.dimension();
  nlohmann::json basis = nlohmann::json::array();
  for (int v = 0; v < sol.dimension(); ++v) {
    nlohmann::json vec = nlohmann::json::object();
    for (std::size_t c = 0; c < sol.parts.size(); ++c)
      if (sgn(sol.basis[v][c]) != 0)
        vec[partition_key(sol.parts[c])] = format_rational(sol.basis[v][c]);
    basis.push_back(vec);
  }
  j["basis"] = basis;
  return j;
}

// --------------------------------------------------------------------------
// Run manifest.

struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  bool seeded = false;
  long n_samples = 0;
  double acceptance_rate = 0.0;
  double ess = 0.0;
  double wall_time_ms = 0.0;
  std::map<std::string, std::string> output_digests;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["units"] = "oscillator units, hbar = m = omega = 1";
    j["normalization"] =
        "C_{N,lambda,r} never computed; all estimators are self-normalized ratios";
    if (seeded) {
      j["rng"] = {{"algorithm", kRngAlgorithm}, {"seed", seed}};
      j["n_samples"] = n_samples;
      j["acceptance_rate"] = acceptance_rate;
      j["ess"] = ess;
    }
    j["wall_time_ms"] = wall_time_ms;
    j["outputs"] = output_digests;
    return j;
  }
};

class OutputWriter {
 public:
  // Creates base/subcommand/<timestamp>/ (or the explicit directory when
  // override_dir is nonempty).
  OutputWriter(const std::string& subcommand, const std::string& base,
               const std::string& override_dir) {
    manifest_.subcommand = subcommand;
    start_ = std::chrono::steady_clock::now();
    if (!override_dir.empty()) {
      dir_ = override_dir;
    } else {
      auto now = std::chrono::system_clock::now().time_since_epoch();
      auto us = std::chrono::duration_cast<std::chrono::microseconds>(now).count();
      dir_ = std::filesystem::path(base) / subcommand / std::to_string(us);
    }
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }
  RunManifest& manifest() { return manifest_; }

  void write_file(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw Error("cannot open output file " + (dir_ / name).string());
    out << content;
    manifest_.output_digests[name] = fnv1a64_hex(content);
  }

  void finalize() {
    auto elapsed = std::chrono::steady_clock::now() - start_;
    manifest_.wall_time_ms =
        std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest_.to_json().dump(2) << "\n";
  }

 private:
  std::filesystem::path dir_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

// Flat key=value config file; '#' starts a comment.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

}  // namespace tcsm
