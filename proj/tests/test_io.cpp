#include "continua/io.hpp"
#include "continua/svg.hpp"

#include "generators.hpp"

#include "doctest.h"

using namespace continua;
using continua::io::json;

namespace {
const Rational kZero(0), kOne(1);

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}
}  // namespace

TEST_CASE("rationals round-trip as decimal strings") {
  Rational big = Rational::parse("123456789012345678901234567891/2");
  auto j = io::to_json(big);
  CHECK(j == json::array({"123456789012345678901234567891", "2"}));
  CHECK(io::rational_from_json(j) == big);
  CHECK(io::rational_from_json(json("3/4")) == Rational(3, 4));
  CHECK(io::rational_from_json(json(5)) == Rational(5));
  CHECK(io::rational_from_json(json::array({6, 8})) == Rational(3, 4));
  CHECK_THROWS_AS(io::rational_from_json(json::array({1, 0})), io::ParseError);
  CHECK_THROWS_AS(io::rational_from_json(json(1.5)), io::ParseError);
}

TEST_CASE("PL maps round-trip bit-exactly") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    auto f = testing::random_cellular(rng);
    auto text = io::dump(io::to_json(f));
    auto g = io::plhomeo_from_json(io::parse_json(text));
    CHECK(g.breakpoints().size() == f.breakpoints().size());
    CHECK(c0_distance(f, g) == kZero);
    CHECK(io::dump(io::to_json(g)) == text);
  }
  auto f1 = build_f_star(1);
  auto j = io::to_json(f1);
  CHECK(j["domain"] == json::array({json::array({"0", "1"}), json::array({"1", "1"})}));
  auto back = io::plhomeo_from_json(j);
  auto w = wandering_intervals(back);
  REQUIRE(w.size() == 3);
  CHECK(w[1].a == Rational(1, 3));
  CHECK(w[1].orientation == Orientation::R);
}

TEST_CASE("malformed map JSON") {
  CHECK_THROWS_AS(io::parse_json("{not json"), io::ParseError);
  CHECK_THROWS_AS(io::plhomeo_from_json(io::parse_json(R"({"values": []})")), io::ParseError);
  // Decreasing values are not a homeomorphism.
  CHECK_THROWS_AS(io::plhomeo_from_json(io::parse_json(
                      R"({"breakpoints": ["0", "1/2", "1"], "values": ["0", "3/4", "1/2"]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::plhomeo_from_json(io::parse_json(
                      R"({"domain": ["0", "2"], "breakpoints": ["0", "1"], "values": ["0", "1"]})")),
                  io::ParseError);
}

TEST_CASE("witness, conjugacy and ternary records") {
  auto w = check_P_eps(build_f_star(1), Rational(1, 2));
  REQUIRE(w.has_value());
  auto j = io::to_json(*w);
  CHECK(j["intervals"].size() == 2);
  CHECK(j["intervals"][0]["orientation"] == "R");
  CHECK(io::oriented_from_json(j["intervals"][1]).orientation == Orientation::L);

  TernaryIndex idx{3, 20};
  CHECK(io::ternary_from_json(io::to_json(idx)) == idx);

  auto report = build_conjugacy(build_f_star(2), 2);
  auto rj = io::to_json(report);
  CHECK(rj["depth"] == 2);
  CHECK(rj["matched"].size() == report.matched.size());
  CHECK(io::rational_from_json(rj["residual"]) == report.residual);
  CHECK(c0_distance(io::plhomeo_from_json(rj["h"]), report.h) == kZero);
}

TEST_CASE("model and model maps round-trip") {
  auto m = build_y(5);
  auto text = io::dump(io::to_json(m));
  auto back = io::ymodel_from_json(io::parse_json(text));
  CHECK(io::dump(io::to_json(back)) == text);
  REQUIRE(back.arcs().size() == m.arcs().size());
  for (std::size_t i = 0; i < m.arcs().size(); ++i) CHECK(back.arc(i).polyline == m.arc(i).polyline);

  auto g = build_g_star(m, 2, 4);
  auto gtext = io::dump(io::to_json(g));
  auto gb = io::yhomeo_from_json(io::parse_json(gtext));
  REQUIRE(gb.maps.size() == g.maps.size());
  for (std::size_t i = 0; i < g.maps.size(); ++i) CHECK(c0_distance(gb.maps[i], g.maps[i]) == kZero);

  YPoint p{3, Rational(2, 9)};
  CHECK(io::ypoint_from_json(io::to_json(p)) == p);

  auto broken = io::parse_json(text);
  broken["arcs"][1]["start"] = 99;
  CHECK_THROWS_AS(io::ymodel_from_json(broken), io::ParseError);
}

TEST_CASE("orbits round-trip through CSV") {
  auto f = build_f_star(2);
  auto orbit = generate_pseudo_orbit(f, Rational(1, 40), {-3, 4}, Rational(1, 5), 12);
  auto csv = io::to_csv(orbit);
  CHECK(csv.rfind("index,x\n-3,", 0) == 0);
  auto back = io::interval_orbit_from_csv(csv);
  CHECK(back.first_index == -3);
  CHECK(back.points == orbit.points);

  auto m = build_y(3);
  auto g = build_g_star(m, 1, 4);
  auto yo = generate_y_pseudo_orbit(m, g, Rational(1, 50), 5, {2, Rational(1, 3)}, 3);
  auto yback = io::y_orbit_from_csv(io::to_csv(yo));
  CHECK(yback.points == yo.points);

  CHECK_THROWS_AS(io::interval_orbit_from_csv("index,x\n0,1/2\n2,1/3\n"), io::ParseError);
  CHECK_THROWS_AS(io::interval_orbit_from_csv("i,x\n0,1/2\n"), io::ParseError);
  CHECK_THROWS_AS(io::interval_orbit_from_csv("index,x\n0,abc\n"), io::ParseError);
  CHECK_THROWS_AS(io::y_orbit_from_csv("index,x\n0,1/2\n"), io::ParseError);
}

TEST_CASE("certificates serialize with exact constants") {
  auto m = build_interval_model();
  auto g = build_g_star(m, 1);
  auto s = global_shadowing_delta(m, g, Rational(1, 10));
  auto j = io::to_json(s);
  CHECK(io::rational_from_json(j["delta"]) == s.delta);
  CHECK(j["certificates"][0]["neighborhood"]["stubs"].empty());
  CHECK(io::dump(j) == io::dump(io::to_json(global_shadowing_delta(m, g, Rational(1, 10)))));
}

TEST_CASE("phase diagram arrows follow orientation") {
  auto one = svg::phase_diagram(build_f_star(0));
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(count(one, "<path") == 1);
  CHECK(count(one, "#1f5fbf") == 2);  // arc and arrowhead, both R
  auto three = svg::phase_diagram(build_f_star(1));
  CHECK(count(three, "<path") == 3);
  CHECK(count(three, "#c0392b") == 4);
  CHECK(three == svg::phase_diagram(build_f_star(1)));
}

TEST_CASE("model diagram") {
  auto m = build_y(4);
  auto plain = svg::model_diagram(m);
  CHECK(count(plain, "<polyline") == m.arcs().size());
  CHECK(count(plain, "<circle") == m.vertices().size());
  auto g = build_g_star(m, 1);
  auto colored = svg::model_diagram(m, &g);
  CHECK(count(colored, "<polyline") == m.arcs().size() * 4);
}
