#include "continua/cantor.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include "doctest.h"

using namespace continua;

namespace {
const Rational kZero(0), kOne(1);
const Interval kUnit{kZero, kOne};
const PLHomeo kId = PLHomeo::identity(kZero, kOne);
const Orientation R = Orientation::R;
const Orientation L = Orientation::L;
}  // namespace

TEST_CASE("j_interval") {
  CHECK(j_interval({0, 0}) == Interval{Rational(1, 3), Rational(2, 3)});
  CHECK(j_interval({1, 2}) == Interval{Rational(7, 9), Rational(8, 9)});
  CHECK(j_interval({2, 0}) == Interval{Rational(1, 27), Rational(2, 27)});
  CHECK_THROWS_AS(j_interval({1, 3}), DomainError);
  CHECK(is_cantor_gap({2, 6}));
  CHECK_FALSE(is_cantor_gap({1, 1}));
}

TEST_CASE("cantor gaps match the nested-interval enumeration") {
  for (unsigned depth = 0; depth <= 5; ++depth) {
    auto oracle = oracle::enumerate_gaps(depth);
    auto gaps = cantor_gaps(depth);
    REQUIRE(gaps.size() == oracle.size());
    std::sort(oracle.begin(), oracle.end(),
              [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      CHECK(j_interval(gaps[i]) == oracle[i].first);
      CHECK(gaps[i].n == oracle[i].second);
    }
  }
}

TEST_CASE("build_f_star wandering structure") {
  CHECK(wandering_intervals(build_f_star(0)) ==
        std::vector<OrientedInterval>{{Rational(1, 3), Rational(2, 3), R}});
  CHECK(wandering_intervals(build_f_star(1)) ==
        std::vector<OrientedInterval>{{Rational(1, 9), Rational(2, 9), L},
                                      {Rational(1, 3), Rational(2, 3), R},
                                      {Rational(7, 9), Rational(8, 9), L}});
  CHECK(fixed_set(build_f_star(1)) ==
        std::vector<Interval>{{kZero, Rational(1, 9)},
                              {Rational(2, 9), Rational(1, 3)},
                              {Rational(2, 3), Rational(7, 9)},
                              {Rational(8, 9), kOne}});
  // Only J(n,k) outside every shallower gap are wandering intervals; the
  // nested-interval enumeration gives 2^(N+1) - 1 of them.
  CHECK(wandering_intervals(build_f_star(3)).size() == oracle::enumerate_gaps(3).size());
  CHECK(wandering_intervals(build_f_star(3)).size() == 15);
}

TEST_CASE("f*_N wandering intervals are the ternary gaps with level parity") {
  for (unsigned depth = 0; depth <= 5; ++depth) {
    auto w = wandering_intervals(build_f_star(depth));
    auto gaps = cantor_gaps(depth);
    REQUIRE(w.size() == gaps.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      Interval j = j_interval(gaps[i]);
      CHECK(w[i].a == j.lo);
      CHECK(w[i].b == j.hi);
      CHECK(w[i].orientation == level_orientation(gaps[i].n));
    }
  }
}

TEST_CASE("f*_N is self-similar on every gap") {
  const PLHomeo f = build_f_star(3);
  for (const auto& idx : cantor_gaps(3)) {
    Interval j = j_interval(idx);
    CHECK(restrict_to(f, j) == rescale(canonical(level_orientation(idx.n), kZero, kOne), j));
  }
}

TEST_CASE("check_P_eps") {
  auto w = check_P_eps(build_f_star(1), Rational(1, 2));
  REQUIRE(w);
  CHECK(w->intervals == std::vector<OrientedInterval>{{Rational(1, 3), Rational(2, 3), R},
                                                      {Rational(7, 9), Rational(8, 9), L}});
  CHECK_FALSE(check_P_eps(build_f_star(1), Rational(1, 4)));
  CHECK_FALSE(check_P_eps(kId, Rational(1, 2)));
  CHECK_FALSE(check_P_eps(kId, Rational(100)));
  CHECK_THROWS_AS(check_P_eps(kId, kZero), DomainError);
}

TEST_CASE("scan counterexample to the earliest-interval greedy") {
  // Taking the earliest R strands the chain: from (1/100, 2/100) no L starts
  // within 2/5. The scan keeps (3/10, 35/100) as the latest reachable R.
  PLHomeo f = kId;
  f = splice(f, canonical_r(Rational(1, 100), Rational(2, 100)));
  f = splice(f, canonical_r(Rational(30, 100), Rational(35, 100)));
  f = splice(f, canonical_l(Rational(60, 100), Rational(99, 100)));
  auto w = check_P_eps(f, Rational(2, 5));
  REQUIRE(w);
  CHECK(w->intervals.front().a == Rational(3, 10));
  CHECK(chain_cost(w->intervals, kUnit) < Rational(2, 5));
}

TEST_CASE("check_P_eps agrees with exhaustive witness search") {
  std::mt19937_64 rng(21);
  const Rational eps_list[] = {Rational(1, 2), Rational(1, 4), Rational(1, 7), Rational(1, 12)};
  for (int i = 0; i < 200; ++i) {
    PLHomeo f = continua::testing::random_cellular(rng, 5 + i % 6);
    auto w = wandering_intervals(f);
    for (const auto& eps : eps_list) {
      auto witness = check_P_eps(f, eps);
      CHECK(witness.has_value() == oracle::exhaustive_has_witness(w, kUnit, eps));
      if (witness) CHECK(chain_cost(witness->intervals, kUnit) < eps);
    }
    auto t = p_eps_threshold_of(f);
    auto ex = oracle::exhaustive_threshold(w, kUnit);
    CHECK(t.has_value() == ex.has_value());
    if (t && ex) CHECK(*t == *ex);
  }
}

TEST_CASE("P_eps is monotone in eps") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    PLHomeo f = continua::testing::random_cellular(rng, 8);
    for (long d = 2; d < 12; ++d) {
      if (check_P_eps(f, Rational(1, d + 1))) CHECK(check_P_eps(f, Rational(1, d)));
    }
  }
}

TEST_CASE("p_eps_threshold") {
  CHECK(p_eps_threshold(1) == Rational(1, 3));
  CHECK(p_eps_threshold(2) == Rational(1, 9));
  // Frozen from the exhaustive oracle.
  CHECK(p_eps_threshold(3) == Rational(1, 27));
  CHECK(p_eps_threshold(4) == Rational(1, 81));
  CHECK_THROWS_AS(p_eps_threshold(7), DomainError);
  CHECK(p_eps_threshold(7, 7) == Rational(1, 2187));
  for (unsigned n = 1; n <= 4; ++n) {
    auto w = wandering_intervals(build_f_star(n));
    CHECK(oracle::exhaustive_threshold(w, kUnit) == p_eps_threshold(n));
  }
}

TEST_CASE("build_conjugacy basic cases") {
  auto report = build_conjugacy(build_f_star(2), 1);
  REQUIRE(report.matched.size() == 1);
  CHECK(report.matched[0].source == OrientedInterval{Rational(1, 3), Rational(2, 3), R});
  CHECK(report.matched[0].target == TernaryIndex{0, 0});
  for (long k = 1; k < 12; ++k) {
    Rational x = Rational(1, 3) + Rational(k, 36);
    CHECK(report.h(x) == x);
  }

  PLHomeo a({kZero, Rational(1, 2), kOne}, {kZero, Rational(1, 4), kOne});
  PLHomeo g = compose(a, compose(build_f_star(2), invert(a)));
  auto moved = build_conjugacy(g, 1);
  CHECK(moved.matched[0].source == OrientedInterval{Rational(1, 6), Rational(1, 2), R});

  CHECK_THROWS_AS(build_conjugacy(kId, 1), InsufficientIntervals);
  CHECK_THROWS_AS(build_conjugacy(build_f_star(1), 3), InsufficientIntervals);
}

TEST_CASE("build_conjugacy recovers conjugated f*") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    PLHomeo a = continua::testing::random_mild_coordinates(rng);
    for (unsigned n = 1; n <= 2; ++n) {
      PLHomeo g = compose(a, compose(build_f_star(n), invert(a)));
      std::optional<Rational> previous;
      for (unsigned depth = 1; depth <= n + 1; ++depth) {
        auto report = build_conjugacy(g, depth);
        REQUIRE(report.matched.size() == (1u << depth) - 1);
        auto gaps = cantor_gaps(depth - 1);
        for (std::size_t i = 0; i < gaps.size(); ++i) {
          CHECK(report.matched[i].target == gaps[i]);
          CHECK(report.matched[i].source.orientation == level_orientation(gaps[i].n));
        }
        CHECK(report.residual == c0_distance(compose(report.h, g),
                                             compose(build_f_star(depth - 1), report.h)));
        if (previous) CHECK(report.residual <= *previous);
        previous = report.residual;
      }
      CHECK(*previous < Rational(1, 1000));
    }
  }
}

TEST_CASE("interval conjugacy is exact away from the tails") {
  PLHomeo a({kZero, Rational(2, 5), kOne}, {kZero, Rational(1, 2), kOne});
  PLHomeo g = compose(a, compose(build_f_star(0), invert(a)));
  OrientedInterval src{a(Rational(1, 3)), a(Rational(2, 3)), R};
  PLHomeo f = build_f_star(0);
  auto verts = interval_conjugacy(g, src, f, {Rational(1, 3), Rational(2, 3), R}, {});
  std::vector<Rational> xs{kZero}, ys{kZero};
  for (auto& [x, y] : verts) {
    xs.push_back(x);
    ys.push_back(y);
  }
  xs.push_back(kOne);
  ys.push_back(kOne);
  PLHomeo h(xs, ys);
  Rational mid = (src.a + src.b) / Rational(2);
  for (long k = -6; k <= 6; ++k) {
    Rational x = iterate(g, mid, k);
    CHECK(h(g(x)) == f(h(x)));
  }
}

TEST_CASE("explode_fixed_point") {
  PLHomeo g = explode_fixed_point(kId, Rational(1, 2), Rational(1, 4), R);
  CHECK(wandering_intervals(g) ==
        std::vector<OrientedInterval>{{Rational(1, 4), Rational(3, 4), R}});
  CHECK(c0_distance(kId, g) == Rational(1, 8));

  PLHomeo f1 = build_f_star(1);
  PLHomeo e = explode_fixed_point(f1, Rational(1, 18), Rational(1, 54), L);
  auto w = wandering_intervals(e);
  REQUIRE(w.size() == 4);
  CHECK(w.front() == OrientedInterval{Rational(1, 27), Rational(2, 27), L});
  CHECK(c0_distance(kId, PLHomeo::identity(kZero, kOne)) == kZero);

  CHECK_THROWS_AS(explode_fixed_point(canonical_r(kZero, kOne), Rational(1, 2), Rational(1, 4), R),
                  NotInFixedSet);
  CHECK_THROWS_AS(explode_fixed_point(f1, Rational(1, 9), Rational(1, 54), R), NotInFixedSet);
}

TEST_CASE("explosion leaves the map untouched outside the window") {
  std::mt19937_64 rng(24);
  int exploded = 0;
  for (int i = 0; i < 200; ++i) {
    PLHomeo f = continua::testing::random_cellular(rng);
    for (const auto& c : fixed_set(f)) {
      if (c.length() < Rational(1, 50)) continue;
      Rational p = (c.lo + c.hi) / Rational(2);
      Rational d = c.length() / Rational(5);
      PLHomeo g = explode_fixed_point(f, p, d, i % 2 ? R : L);
      ++exploded;
      for (const auto& x : f.breakpoints())
        if (x <= p - d || p + d <= x) CHECK(g(x) == f(x));
      if (kZero < c.lo) CHECK(restrict_to(g, {kZero, c.lo}) == restrict_to(f, {kZero, c.lo}));
      if (c.hi < kOne) CHECK(restrict_to(g, {c.hi, kOne}) == restrict_to(f, {c.hi, kOne}));
      CHECK(c0_distance(f, g) == d / Rational(2));
      break;
    }
  }
  CHECK(exploded > 50);
}

TEST_CASE("densify_to_P_eps") {
  PLHomeo g = densify_to_P_eps(kId, Rational(1, 3));
  CHECK(check_P_eps(g, Rational(1, 3)));
  CHECK(c0_distance(kId, g) < Rational(1, 3));

  PLHomeo f2 = build_f_star(2);
  CHECK(densify_to_P_eps(f2, Rational(1, 9) + Rational(1, 100)) == f2);

  std::mt19937_64 rng(25);
  for (int i = 0; i < 50; ++i) {
    PLHomeo f = i % 2 ? continua::testing::random_pl(rng) : continua::testing::random_cellular(rng);
    Rational eps(1, 4 + i % 13);
    PLHomeo d = densify_to_P_eps(f, eps);
    CHECK(check_P_eps(d, eps));
    CHECK(c0_distance(f, d) < eps);
  }
}

TEST_CASE("shrink toward identity") {
  PLHomeo r = canonical_r(kZero, kOne);
  PLHomeo s = shrink_toward_identity(r, Rational(1, 8));
  CHECK(s(Rational(1, 2)) == Rational(5, 8));
  CHECK(c0_distance(r, s) <= Rational(1, 4));
  auto fix = fixed_set(s);
  CHECK(fix.front() == Interval{kZero, Rational(1, 4)});
  CHECK(fix.back() == Interval{Rational(3, 4), kOne});
}
