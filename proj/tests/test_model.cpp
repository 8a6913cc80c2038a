#include <doctest.h>

#include "tcsm/model.hpp"

using namespace tcsm;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate_params(5, 1.0, 4));
  CHECK_THROWS_AS(validate_params(5, 1.0, 5), RangeOutOfBounds);
  CHECK_THROWS_AS(validate_params(5, 1.0, -1), RangeOutOfBounds);
  CHECK_THROWS_AS(validate_params(0, 1.0, 0), RangeOutOfBounds);
  CHECK_THROWS_AS(validate_params(4, -0.5, 1), NegativeCoupling);
  // lambda = 0 is the ideal Bose gas, allowed
  auto p = validate_params(4, 0.0, 0);
  CHECK(p.n == 4);
  CHECK(p.lambda == 0.0);
}

TEST_CASE("ground state energy closed form") {
  CHECK(ground_state_energy(validate_params(5, 1.0, 4)) == doctest::Approx(12.5));
  CHECK(ground_state_energy(validate_params(7, 0.0, 3)) == doctest::Approx(3.5));
  CHECK(ground_state_energy(validate_params(4, 2.0, 1)) == doctest::Approx(8.0));
  // r = N-1 recovers the full-CSM quadratic scaling N/2 + lambda N(N-1)/2
  for (int n = 1; n <= 10; ++n) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      auto p = validate_params(n, lambda, n - 1);
      CHECK(ground_state_energy(p) ==
            doctest::Approx(0.5 * n + lambda * n * (n - 1) / 2.0));
    }
  }
}

TEST_CASE("relative ground energy removes the center-of-mass zero point") {
  CHECK(relative_ground_energy(validate_params(5, 1.0, 4)) == doctest::Approx(12.0));
  CHECK(relative_ground_energy(validate_params(2, 0.0, 1)) == doctest::Approx(0.5));
  CHECK(relative_ground_energy(validate_params(4, 2.0, 1)) == doctest::Approx(7.5));
}

TEST_CASE("energy monotone in lambda and r, linear in lambda") {
  for (int n = 2; n <= 8; ++n) {
    for (int r = 0; r < n - 1; ++r) {
      auto lo = ground_state_energy(validate_params(n, 0.5, r));
      auto hi = ground_state_energy(validate_params(n, 2.0, r));
      CHECK(lo <= hi);
      CHECK(ground_state_energy(validate_params(n, 0.5, r)) <=
            ground_state_energy(validate_params(n, 0.5, r + 1)));
      // linearity: E(2L) - E(L) == E(L) - E(0)
      auto e0 = ground_state_energy(validate_params(n, 0.0, r));
      auto e1 = ground_state_energy(validate_params(n, 1.0, r));
      auto e2 = ground_state_energy(validate_params(n, 2.0, r));
      CHECK(e2 - e1 == doctest::Approx(e1 - e0));
    }
  }
}

TEST_CASE("interaction enumeration matches hand lists") {
  auto s = enumerate_interactions(validate_params(4, 1.0, 2));
  // 1-based (1,2),(1,3),(2,3),(2,4),(3,4)
  PairList expected = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(s.pairs == expected);
  CHECK(s.pairs.size() == 5);

  auto s1 = enumerate_interactions(validate_params(4, 1.0, 1));
  TripleList expected_triples = {{0, 1, 2}, {1, 2, 3}};
  CHECK(s1.triples == expected_triples);
  CHECK(s1.far_triples == expected_triples);  // all triples far for r=1

  auto s2 = enumerate_interactions(validate_params(5, 1.0, 4));
  CHECK(s2.far_triples.empty());
}

TEST_CASE("pair count closed form, exhaustive N <= 12") {
  for (int n = 1; n <= 12; ++n)
    for (int r = 0; r <= n - 1; ++r) {
      auto p = validate_params(n, 1.0, r);
      auto s = enumerate_interactions(p);
      CHECK(static_cast<long>(s.pairs.size()) == p.pair_count());
      CHECK(p.pair_count() == static_cast<long>(r) * (2 * n - r - 1) / 2);
    }
}

TEST_CASE("far triples are triples; far set empty iff r = N-1 (r >= 1, N >= 3)") {
  for (int n = 2; n <= 12; ++n)
    for (int r = 1; r <= n - 1; ++r) {
      auto s = enumerate_interactions(validate_params(n, 1.0, r));
      for (const auto& t : s.far_triples) {
        CHECK(std::find(s.triples.begin(), s.triples.end(), t) != s.triples.end());
        CHECK(t.k - t.i > r);
        CHECK(t.k - t.i <= 2 * r);
      }
      bool empty_expected = (r == n - 1) || (n < 3);
      CHECK(s.far_triples.empty() == empty_expected);
    }
}
