#include <doctest.h>

#include <random>

#include "tcsm/operator_algebra.hpp"

using namespace tcsm;

namespace {
Rational rat(long n, long d = 1) { return make_rational(n, d); }
}

TEST_CASE("commutator [D+, K] = 2 D+ exact on random symmetric polynomials") {
  std::mt19937_64 rng(11);
  for (int n : {3, 4, 6}) {
    for (int r : {1, n - 1}) {
      for (auto lambda : {rat(1, 2), rat(1), rat(2)}) {
        std::vector<Poly> polys;
        for (int t = 0; t < 10; ++t) polys.push_back(random_symmetric_poly(n, 8, rng));
        auto rep = commutator_check(n, lambda, r, OpName::Dplus, OpName::K,
                                    {{rat(2), OpName::Dplus}}, polys);
        CHECK(rep.pass);
        CHECK(rep.cases_checked == 10);
        CHECK(rep.cases_excluded == 0);
      }
    }
  }
}

TEST_CASE("SU(1,1) primed relations exact") {
  std::mt19937_64 rng(17);
  int n = 4, r = 2;
  Rational lambda = rat(1);
  std::vector<Poly> polys;
  for (int t = 0; t < 12; ++t) polys.push_back(random_symmetric_poly(n, 6, rng));

  auto r1 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DplusPrime,
                             {{rat(1), OpName::DplusPrime}}, polys);
  CHECK(r1.pass);
  auto r2 = commutator_check(n, lambda, r, OpName::KPrime, OpName::DminusPrime,
                             {{rat(-1), OpName::DminusPrime}}, polys);
  CHECK(r2.pass);
  auto r3 = commutator_check(n, lambda, r, OpName::DplusPrime, OpName::DminusPrime,
                             {{rat(-2), OpName::KPrime}}, polys);
  CHECK(r3.pass);
}

TEST_CASE("euler similarity check") {
  // S = m2, N=4, r=2, lambda=1: Phi = m2 - 7 satisfies (2K - D+)Phi = 4 Phi
  auto rep = euler_similarity_check(4, rat(1), 2, monomial_symmetric({2}, 4));
  CHECK(rep.pass);
  CHECK(rep.cases_excluded == 0);
  // S = m1: eigenvalue 1, Phi = m1
  CHECK(euler_similarity_check(4, rat(1), 2, monomial_symmetric({1}, 4)).pass);
  // S = constant: eigenvalue 0
  CHECK(euler_similarity_check(4, rat(1), 2, Poly::constant(4, rat(3))).pass);
  // non-polynomial series is reported as excluded, not failed
  auto rep3 = euler_similarity_check(4, rat(1), 1, monomial_symmetric({3}, 4));
  CHECK(rep3.pass);
  CHECK(rep3.cases_excluded == 1);
}

TEST_CASE("ladder representation commutators and spectrum") {
  auto p = validate_params(5, 1.0, 2);
  CHECK_THROWS_AS(build_ladder_rep(p, 1), TruncationTooSmall);
  auto rep = build_ladder_rep(p, 12);
  CHECK(rep.e0_rel == doctest::Approx(relative_ground_energy(p)));
  for (const auto& id : ladder_commutator_checks(rep)) {
    INFO(id.name);
    CHECK(id.pass);
    CHECK(id.max_residual < 1e-12);
  }
}

TEST_CASE("sl(2,C) blocks: dimensions, commutators, Casimir") {
  auto p = validate_params(4, 0.5, 2);
  auto rep = build_ladder_rep(p, 20);
  auto blocks = sl2_check(rep);
  REQUIRE(blocks.size() == 19);  // s = 2..20
  for (const auto& blk : blocks) {
    INFO("s = ", blk.s);
    CHECK(blk.pass);
    CHECK(blk.dimension == blk.s / 2 + 1);
    CHECK(blk.commutator_residual < 1e-12);
    CHECK(blk.casimir_exact);
    CHECK(blk.excluded_states == (blk.s % 2 == 1 ? 1 : 0));
  }
  // spot values: s=4 -> dim 3, j=1, Casimir 2; s=2 -> dim 2, j=1/2, Casimir 3/4
  CHECK(blocks[2].dimension == 3);
  CHECK(blocks[0].dimension == 2);
}

TEST_CASE("ladder degeneracy equivalence for s <= 40") {
  for (int s = 0; s <= 40; ++s) CHECK(ladder_degeneracy_equivalence(s));
}
