#include "continua/cantor.hpp"
#include "continua/quasi_attractor.hpp"

#include "generators.hpp"

#include "doctest.h"

using namespace continua;

namespace {
const Rational kZero(0), kOne(1);
const Rational kEps(1, 10);
constexpr unsigned kEdgeDepth = 11;

std::size_t arc_named(const YModel& m, const std::string& label) {
  for (std::size_t i = 0; i < m.arcs().size(); ++i)
    if (m.arc(i).label == label) return i;
  throw std::runtime_error("no arc " + label);
}

const YModel& y8() {
  static const YModel m = build_y(8);
  return m;
}

const YHomeo& g8() {
  static const YHomeo g = build_g_star(y8(), 3, kEdgeDepth);
  return g;
}

const GlobalShadowing& global8() {
  static const GlobalShadowing s = global_shadowing_delta(y8(), g8(), kEps);
  return s;
}
}  // namespace

TEST_CASE("Y pseudo-orbits respect their bound") {
  const auto& m = y8();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> arc(0, m.arcs().size() - 1);
    YPoint x0{arc(rng), testing::random_fraction(rng, 511)};
    Rational delta(1, 4 + trial);
    auto o = generate_y_pseudo_orbit(m, g8(), delta, 12, x0, derive_seed(1, trial));
    CHECK(o.points.size() == 13);
    CHECK(max_jump_squared(m, g8(), o) < delta * delta);
  }
  auto truth = generate_y_pseudo_orbit(m, g8(), kZero, 6, {0, Rational(1, 3)}, 1);
  CHECK(max_jump_squared(m, g8(), truth) == kZero);
}

TEST_CASE("large noise crosses between arcs near a vertex") {
  const auto& m = y8();
  auto v1 = arc_named(m, "v1");
  std::mt19937_64 rng(8);
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(perturb(m, {v1, Rational(1, 100)}, Rational(1, 10), rng).arc);
  CHECK(seen.size() == 3);  // v1, the base segment and the circle
}

TEST_CASE("inward neighborhoods") {
  const auto& m = y8();
  const auto& g = g8();
  for (std::size_t a = 0; a < m.arcs().size(); ++a) {
    auto v = find_inward_neighborhood(m, g, a, Rational(1, 100));
    CHECK(image_closure_inside(g, v));
    for (const auto& s : v.stubs) {
      CHECK(dist2(embed(m, {s.arc, s.cut}), m.vertices()[s.vertex].position) < Rational(1, 10000));
      // Stub image strictly inside the stub.
      Rational gc = g.maps[s.arc](s.cut);
      CHECK((s.at_start ? gc < s.cut : s.cut < gc));
      auto w = wandering_intervals(g.maps[s.arc]);
      bool inside = std::any_of(w.begin(), w.end(), [&](const auto& iv) {
        return iv.a < s.cut && s.cut < iv.b &&
               iv.orientation == (s.at_start ? Orientation::L : Orientation::R);
      });
      CHECK(inside);
    }
  }
  // Base arc h1 = [0, 1] x {0} meets h2 and V_2 at (0, 0), and the circle and
  // V_1 at (1, 0).
  auto v = find_inward_neighborhood(m, g, arc_named(m, "h1"), Rational(1, 100));
  CHECK(v.stubs.size() == 4);
  CHECK(in_neighborhood(m, v, {arc_named(m, "h1"), Rational(1, 2)}));
  CHECK(in_neighborhood(m, v, {arc_named(m, "v2"), Rational(1, 100000)}));
  CHECK_FALSE(in_neighborhood(m, v, {arc_named(m, "v2"), Rational(1, 2)}));
  CHECK_FALSE(in_neighborhood(m, v, {arc_named(m, "h4"), Rational(1, 2)}));

  // A huge alpha still cuts inside the adjacent arc.
  auto wide = find_inward_neighborhood(m, g, arc_named(m, "h1"), Rational(10));
  for (const auto& s : wide.stubs) CHECK((kZero < s.cut && s.cut < kOne));

  CHECK_THROWS_AS(find_inward_neighborhood(m, identity_y(m), 0, Rational(1, 100)), NoInwardStub);
  // Without the edge gaps, f*_3 leaves the last 1/81 of every arc fixed.
  CHECK_THROWS_AS(find_inward_neighborhood(m, build_g_star(m, 3), 0, Rational(1, 1000)),
                  NoInwardStub);
  CHECK_THROWS_AS(find_inward_neighborhood(m, g, 0, kZero), DomainError);
}

TEST_CASE("alpha formula") {
  // eps = 1/10, delta1 = 3/50 and a Lipschitz constant of 1: alpha is half of 1/50.
  Rational eps(1, 10), delta1(3, 50);
  Rational alpha = min(min(eps / Rational(2), delta1 / Rational(3)), delta1 / Rational(3)) / Rational(2);
  CHECK(alpha == Rational(1, 100));
  CHECK(alpha < Rational(1, 50));
}

TEST_CASE("certificate for the base arc") {
  const auto& m = y8();
  auto c = quasi_attractor_certificate(m, g8(), arc_named(m, "h1"), kEps);
  CHECK(c.delta1.sign() > 0);
  CHECK(c.alpha.sign() > 0);
  CHECK(c.delta.sign() > 0);
  CHECK(c.alpha < min(kEps / Rational(2), c.delta1 / Rational(3)));
  CHECK(c.lipschitz * c.alpha < c.delta1 / Rational(3));
  CHECK(c.delta * Rational(3) < c.delta1);
  CHECK(image_closure_inside(g8(), c.V));
  auto clearance = image_clearance_squared(m, g8(), c.V);
  REQUIRE(clearance.has_value());
  CHECK(c.delta * c.delta <= *clearance);
  MESSAGE("h1: delta1 = " << c.delta1 << ", alpha = " << c.alpha << ", delta = " << c.delta);
}

TEST_CASE("identity dynamics are rejected") {
  const auto& m = y8();
  CHECK_THROWS_AS(quasi_attractor_certificate(m, identity_y(m), 1, kEps), NoInwardStub);
  CHECK_THROWS_AS(global_shadowing_delta(m, identity_y(m), kEps), CoverFailure);
}

TEST_CASE("single-arc model") {
  auto m = build_interval_model();
  auto g = build_g_star(m, 2);
  auto c = quasi_attractor_certificate(m, g, 0, kEps);
  CHECK(c.V.stubs.empty());
  CHECK_FALSE(image_clearance_squared(m, g, c.V).has_value());
  auto s = global_shadowing_delta(m, g, kEps);
  CHECK(s.delta == c.delta);
  CHECK(s.cover.size() == 1);
  // Largest grid value below delta1 / 3.
  CHECK(c.delta * Rational(3) < c.delta1);
  CHECK(c.delta * Rational(6) >= c.delta1);
}

TEST_CASE("global delta on Y") {
  const auto& s = global8();
  CHECK(s.failures.empty());
  CHECK(s.cover.size() == y8().arcs().size());
  Rational least = s.cover.front().second;
  for (const auto& c : s.cover) least = min(least, c.second);
  CHECK(s.delta == least);
  CHECK(s.delta.sign() > 0);
  MESSAGE("global delta = " << s.delta);
}

TEST_CASE("orbits on one arc match the arc-level shadowing set") {
  auto m = build_interval_model();
  auto g = build_g_star(m, 2);
  for (int trial = 0; trial < 40; ++trial) {
    auto io = generate_pseudo_orbit(g.maps[0], Rational(1, 20), {0, 8},
                                    Rational(trial + 1, 43), derive_seed(4, trial));
    YOrbit yo{0, {}, io.delta};
    for (const auto& t : io.points) yo.points.push_back({0, t});
    Rational eps(1, 25);
    auto set = shadowing_set(g.maps[0], io, eps);
    auto w = shadow_on_model(m, g, yo, eps);
    // Strict tolerance on the model: agreement whenever the set has interior.
    if (!set.empty() && set.intervals[0].lo < set.intervals[0].hi) {
      REQUIRE(w.has_value());
      CHECK(set.intervals[0].contains(w->t));
    }
    if (set.empty()) CHECK_FALSE(w.has_value());
  }
}

TEST_CASE("orbit starting on a short vertical is shadowed from the base") {
  const auto& m = y8();
  auto v8 = arc_named(m, "v8");
  YPoint x0{v8, Rational(1, 100)};
  auto orbit = generate_y_pseudo_orbit(m, g8(), Rational(1, 1000), 15, x0, 21);
  auto w = shadow_on_model(m, g8(), orbit, kEps, {});
  REQUIRE(w.has_value());
  auto from_base = shadow_from_arc(m, g8(), arc_named(m, "h1"), orbit, kEps);
  // The base at V_8 is the vertex between h8 and h7.
  auto h7 = shadow_from_arc(m, g8(), arc_named(m, "h7"), orbit, kEps);
  auto h8 = shadow_from_arc(m, g8(), arc_named(m, "h8"), orbit, kEps);
  CHECK((h7.has_value() || h8.has_value()));
  CHECK_FALSE(from_base.has_value());
}

TEST_CASE("certificate soundness on samples") {
  const auto& m = y8();
  const auto& s = global8();
  for (const auto& c : s.certificates) {
    for (int trial = 0; trial < 20; ++trial) {
      std::mt19937_64 rng(derive_seed(c.arc, trial));
      YPoint start{c.arc, testing::random_fraction(rng, 4096)};
      YPoint x0 = perturb(m, start, c.delta, rng);
      auto orbit = generate_y_pseudo_orbit(m, g8(), c.delta, 20, x0, rng());
      auto w = shadow_from_arc(m, g8(), c.arc, orbit, kEps);
      CHECK_MESSAGE(w.has_value(), "arc " << c.arc << " trial " << trial);
    }
  }
}

TEST_CASE("composition soundness on samples") {
  const auto& m = y8();
  const auto& s = global8();
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng(derive_seed(77, trial));
    std::uniform_int_distribution<std::size_t> arc(0, m.arcs().size() - 1);
    YPoint x0{arc(rng), testing::random_fraction(rng, 4096)};
    auto orbit = generate_y_pseudo_orbit(m, g8(), s.delta, 20, x0, rng());
    CHECK(shadow_on_model(m, g8(), orbit, kEps, s.cover).has_value());
  }
}
