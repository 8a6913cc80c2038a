#pragma once

// Verification of the model's operator identities: the [D+, K] relation and
// the SU(1,1) triple acting on polynomials (exact rational arithmetic), the
// Euler-operator similarity, and the appendix structure — center-of-mass /
// relative ladder operators, the deformed oscillator, and the sl(2,C)
// generators on a truncated occupation basis.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tcsm/model.hpp"
#include "tcsm/sympoly.hpp"

namespace tcsm {

// ---------------------------------------------------------------------------
// Polynomial operators.

enum class OpName { K, Euler, Dplus, KPrime, DplusPrime, DminusPrime };

inline std::string op_name(OpName o) {
  switch (o) {
    case OpName::K: return "K";
    case OpName::Euler: return "Euler";
    case OpName::Dplus: return "D+";
    case OpName::KPrime: return "K'";
    case OpName::DplusPrime: return "D'+";
    case OpName::DminusPrime: return "D'-";
  }
  return "?";
}

inline std::optional<Poly> apply_operator(OpName o, int n, const Rational& lambda,
                                          int range, const Poly& f) {
  switch (o) {
    case OpName::K:
    case OpName::Euler:
      return euler_operator(f);
    case OpName::Dplus:
      return apply_dplus(n, lambda, range, f);
    case OpName::KPrime: {
      Rational e0 = ground_energy_rational(n, lambda, range);
      return (euler_operator(f) + f.scaled(e0)).scaled(make_rational(-1, 2));
    }
    case OpName::DplusPrime: {
      auto d = apply_dplus(n, lambda, range, f);
      if (!d) return std::nullopt;
      return d->scaled(make_rational(1, 2));
    }
    case OpName::DminusPrime:
      return (rho_squared(n) * f).scaled(make_rational(1, 2));
  }
  return std::nullopt;
}

struct IdentityReport {
  std::string name;
  bool pass = true;
  long cases_checked = 0;
  long cases_excluded = 0;    // NonPolynomial inputs / convention exclusions
  double max_residual = 0.0;  // 0 for exact rational checks
  std::string note;
};

// Verifies [A, B] f = sum_t coeff_t * Op_t f exactly on each test
// polynomial. NonPolynomial intermediates count as excluded cases.
inline IdentityReport commutator_check(
    int n, const Rational& lambda, int range, OpName a, OpName b,
    const std::vector<std::pair<Rational, OpName>>& expected,
    const std::vector<Poly>& test_polys) {
  IdentityReport rep;
  rep.name = "[" + op_name(a) + "," + op_name(b) + "]";
  for (const Poly& f : test_polys) {
    auto bf = apply_operator(b, n, lambda, range, f);
    auto af = apply_operator(a, n, lambda, range, f);
    if (!bf || !af) { ++rep.cases_excluded; continue; }
    auto abf = apply_operator(a, n, lambda, range, *bf);
    auto baf = apply_operator(b, n, lambda, range, *af);
    if (!abf || !baf) { ++rep.cases_excluded; continue; }
    Poly lhs = *abf - *baf;
    Poly rhs(n);
    bool ok = true;
    for (const auto& [coeff, op] : expected) {
      auto t = apply_operator(op, n, lambda, range, f);
      if (!t) { ok = false; break; }
      rhs += t->scaled(coeff);
    }
    if (!ok) { ++rep.cases_excluded; continue; }
    ++rep.cases_checked;
    if (!(lhs == rhs)) rep.pass = false;
  }
  return rep;
}

// Random symmetric polynomial: a few monomial symmetric terms of weight
// <= max_degree with small random rational coefficients. Symmetric inputs
// keep every D+ application polynomial.
inline Poly random_symmetric_poly(int n, int max_degree, std::mt19937_64& rng,
                                  int n_terms = 3) {
  std::uniform_int_distribution<int> deg_dist(1, max_degree);
  std::uniform_int_distribution<long> num_dist(-9, 9);
  std::uniform_int_distribution<long> den_dist(1, 9);
  Poly f(n);
  for (int t = 0; t < n_terms; ++t) {
    int deg = deg_dist(rng);
    auto parts = partitions(deg, n);
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    long num = num_dist(rng);
    if (num == 0) num = 1;
    f += monomial_symmetric(parts[pick(rng)], n).scaled(make_rational(num, den_dist(rng)));
  }
  return f;
}

// K S = deg * S for homogeneous symmetric S, and the similarity image
// Phi = exp(-D+/4) S solves the eigenvalue equation (2K - D+) Phi = 2 deg Phi.
inline IdentityReport euler_similarity_check(int n, const Rational& lambda, int range,
                                             const Poly& sn) {
  IdentityReport rep;
  rep.name = "euler-similarity";
  auto deg = sn.homogeneous_degree();
  if (!deg) throw Error("euler_similarity_check requires a homogeneous input");
  rep.cases_checked = 1;
  if (!(euler_operator(sn) == sn.scaled(Rational(*deg)))) rep.pass = false;
  auto phi = similarity_series(n, lambda, range, sn);
  if (!phi) {
    ++rep.cases_excluded;
    rep.note = "similarity series non-polynomial; eigenvalue equation not applicable";
    return rep;
  }
  auto dphi = apply_dplus(n, lambda, range, *phi);
  if (!dphi) { rep.pass = false; return rep; }
  Poly lhs = euler_operator(*phi).scaled(Rational(2)) - *dphi;
  if (!(lhs == phi->scaled(Rational(2 * *deg)))) rep.pass = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Finite matrix representation of the appendix ladder structure.

struct DenseMatrix {
  int n = 0;
  std::vector<double> a;
  explicit DenseMatrix(int dim = 0) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix out(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        double v = x.at(i, k);
        if (v == 0.0) continue;
        for (int j = 0; j < x.n; ++j) out.at(i, j) += v * y.at(k, j);
      }
    return out;
  }
  friend DenseMatrix operator-(DenseMatrix x, const DenseMatrix& y) {
    for (std::size_t t = 0; t < x.a.size(); ++t) x.a[t] -= y.a[t];
    return x;
  }
  friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix& y) {
    for (std::size_t t = 0; t < x.a.size(); ++t) x.a[t] += y.a[t];
    return x;
  }
  DenseMatrix scaled(double s) const {
    DenseMatrix out = *this;
    for (auto& v : out.a) v *= s;
    return out;
  }
};

// Occupation basis (n_X, n_rel) with s = n_X + 2 n_rel <= s_max.
struct LadderMatrixRep {
  int s_max = 0;
  double e0_rel = 0.0;  // E^{0,rel} in hbar*omega
  std::vector<std::pair<int, int>> basis;
  std::map<std::pair<int, int>, int> index;
  DenseMatrix a_x_plus, a_x_minus, a_rel_plus, a_rel_minus, b_rel_plus, b_rel_minus;
  DenseMatrix num_x, num_rel, h_cm, h_rel, j_plus, j_minus, j_z;
  // J- is normalized after the double lowering: matrix elements
  // sqrt(n_X (n_rel+1) / 2) for n_X >= 2 and zero on n_X in {0, 1}, which
  // keeps J- J+ well-defined on the lowest-weight states.
  std::string convention =
      "J- = b+_rel (a-_X)^2 / sqrt(2(N_X - 1)) with the scalar applied after "
      "the double lowering; columns with n_X in {0,1} are annihilated";
};

inline LadderMatrixRep build_ladder_rep(const ModelParams& p, int s_max) {
  if (s_max < 2)
    throw TruncationTooSmall("s_max must be >= 2 so the sl(2,C) sector is nonempty");
  LadderMatrixRep rep;
  rep.s_max = s_max;
  rep.e0_rel = relative_ground_energy(p);
  for (int s = 0; s <= s_max; ++s)
    for (int nr = 0; 2 * nr <= s; ++nr) rep.basis.emplace_back(s - 2 * nr, nr);
  int dim = static_cast<int>(rep.basis.size());
  for (int t = 0; t < dim; ++t) rep.index[rep.basis[t]] = t;

  auto zero = DenseMatrix(dim);
  rep.a_x_plus = rep.a_x_minus = rep.a_rel_plus = rep.a_rel_minus = zero;
  rep.b_rel_plus = rep.b_rel_minus = rep.num_x = rep.num_rel = zero;
  rep.h_cm = rep.h_rel = rep.j_plus = rep.j_minus = rep.j_z = zero;

  auto put = [&](DenseMatrix& m, int nx_to, int nr_to, int col, double v) {
    auto it = rep.index.find({nx_to, nr_to});
    if (it != rep.index.end()) m.at(it->second, col) = v;
  };

  for (int col = 0; col < dim; ++col) {
    auto [nx, nr] = rep.basis[col];
    put(rep.a_x_plus, nx + 1, nr, col, std::sqrt(nx + 1.0));
    if (nx >= 1) put(rep.a_x_minus, nx - 1, nr, col, std::sqrt(double(nx)));
    // deformed relative ladder: a+|nr> = sqrt(phi(nr+1))|nr+1>,
    // phi(m) = m (m - 1 + e0_rel)
    put(rep.a_rel_plus, nx, nr + 1, col, std::sqrt((nr + 1.0) * (nr + rep.e0_rel)));
    if (nr >= 1)
      put(rep.a_rel_minus, nx, nr - 1, col, std::sqrt(nr * (nr - 1.0 + rep.e0_rel)));
    put(rep.b_rel_plus, nx, nr + 1, col, std::sqrt(nr + 1.0));
    if (nr >= 1) put(rep.b_rel_minus, nx, nr - 1, col, std::sqrt(double(nr)));
    rep.num_x.at(col, col) = nx;
    rep.num_rel.at(col, col) = nr;
    rep.h_cm.at(col, col) = nx + 0.5;
    rep.h_rel.at(col, col) = 2.0 * nr + rep.e0_rel;
    if (nr >= 1) put(rep.j_plus, nx + 2, nr - 1, col, std::sqrt(nr * (nx + 2.0) / 2.0));
    if (nx >= 2) put(rep.j_minus, nx - 2, nr + 1, col, std::sqrt(nx * (nr + 1.0) / 2.0));
    rep.j_z.at(col, col) = 0.25 * (nx - 2.0 * nr);
  }
  return rep;
}

namespace detail {

// Max |(AB - BA - expected) * e_col| over the given columns.
inline double commutator_residual(const DenseMatrix& a, const DenseMatrix& b,
                                  const DenseMatrix& expected,
                                  const std::vector<int>& cols) {
  DenseMatrix c = a * b - b * a - expected;
  double worst = 0.0;
  for (int col : cols)
    for (int row = 0; row < c.n; ++row)
      worst = std::max(worst, std::abs(c.at(row, col)));
  return worst;
}

}  // namespace detail

// [H_CM, a_X^±] = ±a_X^±, [H_rel, a_rel^±] = ±2 a_rel^±, and the spectrum
// E = s + E0 on basis states. Raising operators exit the basis on the
// truncation edge s = s_max (s_max - 1 for a_X^+); those columns are
// excluded and reported.
inline std::vector<IdentityReport> ladder_commutator_checks(const LadderMatrixRep& rep) {
  std::vector<IdentityReport> out;
  int dim = static_cast<int>(rep.basis.size());

  auto run = [&](const std::string& name, const DenseMatrix& h, const DenseMatrix& ladder,
                 double sign_factor, int budget) {
    IdentityReport r;
    r.name = name;
    std::vector<int> cols;
    for (int c = 0; c < dim; ++c) {
      auto [nx, nr] = rep.basis[c];
      if (nx + 2 * nr + budget <= rep.s_max) cols.push_back(c);
    }
    r.cases_checked = static_cast<long>(cols.size());
    r.cases_excluded = dim - r.cases_checked;
    r.max_residual =
        detail::commutator_residual(h, ladder, ladder.scaled(sign_factor), cols);
    r.pass = r.max_residual < 1e-12;
    if (r.cases_excluded > 0) r.note = "truncation-edge columns excluded";
    return r;
  };

  out.push_back(run("[H_CM,a_X^+]=+a_X^+", rep.h_cm, rep.a_x_plus, 1.0, 1));
  out.push_back(run("[H_CM,a_X^-]=-a_X^-", rep.h_cm, rep.a_x_minus, -1.0, 0));
  out.push_back(run("[H_rel,a_rel^+]=+2a_rel^+", rep.h_rel, rep.a_rel_plus, 2.0, 2));
  out.push_back(run("[H_rel,a_rel^-]=-2a_rel^-", rep.h_rel, rep.a_rel_minus, -2.0, 0));

  IdentityReport levels;
  levels.name = "spectrum E - E0_rel - 1/2 = n_X + 2 n_rel";
  levels.cases_checked = dim;
  for (int c = 0; c < dim; ++c) {
    auto [nx, nr] = rep.basis[c];
    double excitation = rep.h_cm.at(c, c) + rep.h_rel.at(c, c) - rep.e0_rel - 0.5;
    levels.max_residual = std::max(levels.max_residual, std::abs(excitation - (nx + 2.0 * nr)));
  }
  levels.pass = levels.max_residual < 1e-12;
  out.push_back(levels);
  return out;
}

struct Sl2BlockReport {
  int s = 0;
  int dimension = 0;
  long expected_dimension = 0;
  double commutator_residual = 0.0;  // [J_z,J±] and [J+,J-] combined
  bool casimir_exact = true;         // rational check of j(j+1) per state
  int excluded_states = 0;           // n_X = 1 convention exclusions
  bool pass = false;
};

// Per-block verification of the sl(2,C) structure for 2 <= s <= s_max.
// J± preserve s, so each block closes on itself; the only excluded states
// are n_X = 1 (odd blocks), where the J- normalization denominator forces
// annihilation (see LadderMatrixRep::convention).
inline std::vector<Sl2BlockReport> sl2_check(const LadderMatrixRep& rep) {
  std::vector<Sl2BlockReport> out;
  for (int s = 2; s <= rep.s_max; ++s) {
    Sl2BlockReport blk;
    blk.s = s;
    std::vector<int> cols;
    for (std::size_t t = 0; t < rep.basis.size(); ++t)
      if (rep.basis[t].first + 2 * rep.basis[t].second == s)
        cols.push_back(static_cast<int>(t));
    blk.dimension = static_cast<int>(cols.size());
    blk.expected_dimension = s / 2 + 1;  // floor(s/2)+1, matching d(s)

    std::vector<int> checkable;
    for (int c : cols) {
      if (rep.basis[c].first == 1) { ++blk.excluded_states; continue; }
      checkable.push_back(c);
    }
    double rz = detail::commutator_residual(rep.j_z, rep.j_plus, rep.j_plus, cols);
    rz = std::max(rz, detail::commutator_residual(rep.j_z, rep.j_minus,
                                                  rep.j_minus.scaled(-1.0), cols));
    double rpm = detail::commutator_residual(rep.j_plus, rep.j_minus,
                                             rep.j_z.scaled(2.0), checkable);
    blk.commutator_residual = std::max(rz, rpm);

    // Casimir, exactly: J+J- and J-J+ are diagonal with rational entries.
    Rational expected = make_rational(static_cast<long>(s) * (s + 4), 16);
    for (int c : checkable) {
      auto [nx, nr] = rep.basis[c];
      Rational jpjm = (nx >= 2) ? make_rational(static_cast<long>(nx) * (nr + 1), 2)
                                : Rational(0);
      Rational jmjp = make_rational(static_cast<long>(nr) * (nx + 2), 2);
      Rational jz = make_rational(nx - 2L * nr, 4);
      Rational value = jz * jz + (jpjm + jmjp) / 2;
      if (value != expected) blk.casimir_exact = false;
    }
    blk.pass = blk.dimension == blk.expected_dimension &&
               blk.commutator_residual < 1e-12 && blk.casimir_exact;
    out.push_back(blk);
  }
  return out;
}

// #{(n_X, n_rel) : n_X + 2 n_rel = s} equals the truncated-regime d(s).
inline bool ladder_degeneracy_equivalence(int s) {
  long count = 0;
  for (int nr = 0; 2 * nr <= s; ++nr) ++count;
  ModelParams p{64, 1.0, 1};  // any r < N-1
  return count == degeneracy(p, s).value;
}

}  // namespace tcsm
