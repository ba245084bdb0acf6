#include "continua/io.hpp"

#include <fstream>
#include <sstream>

namespace continua::io {
namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string integer_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("expected an integer or a decimal string");
}

std::vector<Rational> rationals(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Orientation orientation_from(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "R") return Orientation::R;
  if (s == "L") return Orientation::L;
  throw ParseError("orientation must be \"R\" or \"L\"");
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  return rows;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(row);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json to_json(const Rational& r) { return json::array({r.numerator_str(), r.denominator_str()}); }

Rational rational_from_json(const json& j) {
  return guarded("rational", [&] {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_array() && j.size() == 2) return Rational::from_parts(integer_text(j[0]), integer_text(j[1]));
    throw ParseError("expected [num, den], an integer or a \"p/q\" string");
  });
}

json to_json(const Interval& i) { return json::array({to_json(i.lo), to_json(i.hi)}); }

json to_json(const OrientedInterval& w) {
  return {{"a", to_json(w.a)}, {"b", to_json(w.b)}, {"orientation", std::string(1, to_char(w.orientation))}};
}

OrientedInterval oriented_from_json(const json& j) {
  return guarded("wandering interval", [&] {
    return OrientedInterval{rational_from_json(field(j, "a")), rational_from_json(field(j, "b")),
                            orientation_from(field(j, "orientation"))};
  });
}

json to_json(const PLHomeo& f) {
  json bps = json::array(), vals = json::array();
  for (const auto& x : f.breakpoints()) bps.push_back(to_json(x));
  for (const auto& y : f.values()) vals.push_back(to_json(y));
  return {{"domain", json::array({to_json(f.lo()), to_json(f.hi())})},
          {"breakpoints", std::move(bps)},
          {"values", std::move(vals)}};
}

PLHomeo plhomeo_from_json(const json& j) {
  return guarded("PL map", [&] {
    auto xs = rationals(field(j, "breakpoints"));
    auto ys = rationals(field(j, "values"));
    if (j.contains("domain")) {
      auto d = rationals(j.at("domain"));
      if (d.size() != 2 || xs.empty() || d[0] != xs.front() || d[1] != xs.back())
        throw ParseError("domain does not match the breakpoints");
    }
    return PLHomeo(std::move(xs), std::move(ys));
  });
}

json to_json(const TernaryIndex& idx) { return {{"n", idx.n}, {"k", idx.k}}; }

TernaryIndex ternary_from_json(const json& j) {
  return guarded("ternary index", [&] {
    return TernaryIndex{field(j, "n").get<unsigned>(), field(j, "k").get<unsigned long long>()};
  });
}

json to_json(const PWitness& w) {
  json chain = json::array();
  for (const auto& iv : w.intervals) chain.push_back(to_json(iv));
  return {{"epsilon", to_json(w.epsilon)}, {"intervals", std::move(chain)}};
}

json to_json(const ConjugacyReport& r) {
  json matched = json::array();
  for (const auto& m : r.matched)
    matched.push_back({{"source", to_json(m.source)}, {"target", to_json(m.target)}});
  return {{"depth", r.depth},
          {"matched", std::move(matched)},
          {"residual", to_json(r.residual)},
          {"h", to_json(r.h)}};
}

json to_json(const ShadowingSet& s) {
  json ivs = json::array();
  for (const auto& i : s.intervals) ivs.push_back(to_json(i));
  return {{"epsilon", to_json(s.epsilon)}, {"intervals", std::move(ivs)}};
}

json to_json(const YPoint& p) { return {{"arc", p.arc}, {"t", to_json(p.t)}}; }

YPoint ypoint_from_json(const json& j) {
  return guarded("model point", [&] {
    return YPoint{field(j, "arc").get<std::size_t>(), rational_from_json(field(j, "t"))};
  });
}

json to_json(const YModel& m) {
  auto point = [](const Point2& p) { return json::array({to_json(p.x), to_json(p.y)}); };
  json vs = json::array();
  for (std::size_t i = 0; i < m.vertices().size(); ++i)
    vs.push_back({{"id", i}, {"label", m.vertices()[i].label}, {"position", point(m.vertices()[i].position)}});
  json arcs = json::array();
  for (std::size_t i = 0; i < m.arcs().size(); ++i) {
    const Arc& a = m.arc(i);
    json rec{{"id", i}, {"label", a.label}, {"start", a.start}, {"end", a.end},
             {"embedding", a.embedding == Embedding::Segment ? "segment" : "polyline"}};
    if (a.embedding == Embedding::Polyline) {
      json pts = json::array();
      for (const auto& p : a.polyline) pts.push_back(point(p));
      rec["polyline"] = std::move(pts);
    }
    arcs.push_back(std::move(rec));
  }
  return {{"vertical_segments", m.vertical_segments()}, {"vertices", std::move(vs)}, {"arcs", std::move(arcs)}};
}

YModel ymodel_from_json(const json& j) {
  return guarded("model", [&] {
    auto point = [](const json& p) {
      if (!p.is_array() || p.size() != 2) throw ParseError("a point is [x, y]");
      return Point2{rational_from_json(p[0]), rational_from_json(p[1])};
    };
    std::vector<Vertex> vs;
    for (const auto& v : field(j, "vertices")) {
      if (field(v, "id").get<std::size_t>() != vs.size()) throw ParseError("vertex ids must be 0, 1, ...");
      vs.push_back({field(v, "label").get<std::string>(), point(field(v, "position"))});
    }
    std::vector<Arc> arcs;
    for (const auto& a : field(j, "arcs")) {
      if (field(a, "id").get<std::size_t>() != arcs.size()) throw ParseError("arc ids must be 0, 1, ...");
      Arc arc;
      arc.label = field(a, "label").get<std::string>();
      arc.start = field(a, "start").get<std::size_t>();
      arc.end = field(a, "end").get<std::size_t>();
      if (arc.start >= vs.size() || arc.end >= vs.size()) throw ParseError("arc endpoint id out of range");
      std::string kind = field(a, "embedding").get<std::string>();
      if (kind == "segment") {
        arc.embedding = Embedding::Segment;
        arc.polyline = {vs[arc.start].position, vs[arc.end].position};
      } else if (kind == "polyline") {
        arc.embedding = Embedding::Polyline;
        for (const auto& p : field(a, "polyline")) arc.polyline.push_back(point(p));
      } else {
        throw ParseError("unknown embedding '" + kind + "'");
      }
      arcs.push_back(std::move(arc));
    }
    return YModel(field(j, "vertical_segments").get<unsigned>(), std::move(vs), std::move(arcs));
  });
}

json to_json(const YHomeo& g) {
  json maps = json::array();
  for (std::size_t i = 0; i < g.maps.size(); ++i) maps.push_back({{"arc", i}, {"map", to_json(g.maps[i])}});
  return {{"arcs", std::move(maps)}};
}

YHomeo yhomeo_from_json(const json& j) {
  return guarded("model homeomorphism", [&] {
    YHomeo g;
    for (const auto& rec : field(j, "arcs")) {
      if (field(rec, "arc").get<std::size_t>() != g.maps.size()) throw ParseError("arc ids must be 0, 1, ...");
      g.maps.push_back(plhomeo_from_json(field(rec, "map")));
    }
    return g;
  });
}

json to_json(const Neighborhood& v) {
  json stubs = json::array();
  for (const auto& s : v.stubs)
    stubs.push_back({{"arc", s.arc}, {"vertex", s.vertex}, {"side", s.at_start ? "start" : "end"},
                     {"cut", to_json(s.cut)}});
  return {{"arc", v.arc}, {"stubs", std::move(stubs)}};
}

json to_json(const QuasiAttractorCertificate& c) {
  return {{"arc", c.arc},
          {"epsilon", to_json(c.epsilon)},
          {"delta1", to_json(c.delta1)},
          {"alpha", to_json(c.alpha)},
          {"lipschitz", to_json(c.lipschitz)},
          {"delta", to_json(c.delta)},
          {"neighborhood", to_json(c.V)}};
}

json to_json(const GlobalShadowing& s) {
  json cover = json::array(), certs = json::array(), failures = json::array();
  for (const auto& [arc, d] : s.cover) cover.push_back({{"arc", arc}, {"delta", to_json(d)}});
  for (const auto& c : s.certificates) certs.push_back(to_json(c));
  for (const auto& [arc, why] : s.failures) failures.push_back({{"arc", arc}, {"reason", why}});
  return {{"delta", to_json(s.delta)},
          {"cover", std::move(cover)},
          {"certificates", std::move(certs)},
          {"failures", std::move(failures)}};
}

std::string to_csv(const IntervalOrbit& orbit) {
  std::string out = "index,x\n";
  for (std::size_t i = 0; i < orbit.points.size(); ++i)
    out += std::to_string(orbit.first_index + static_cast<long>(i)) + "," + orbit.points[i].str() + "\n";
  return out;
}

IntervalOrbit interval_orbit_from_csv(const std::string& text) {
  return guarded("orbit CSV", [&] {
    auto rows = csv_rows(text);
    if (rows.empty() || rows[0] != "index,x") throw ParseError("expected header 'index,x'");
    IntervalOrbit orbit;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      auto cells = split(rows[r]);
      if (cells.size() != 2) throw ParseError("row " + std::to_string(r) + " needs 2 cells");
      long index = std::stol(cells[0]);
      if (r == 1) orbit.first_index = index;
      else if (index != orbit.first_index + static_cast<long>(r) - 1)
        throw ParseError("indices must be consecutive");
      orbit.points.push_back(Rational::parse(cells[1]));
    }
    if (orbit.points.empty()) throw ParseError("orbit has no points");
    return orbit;
  });
}

std::string to_csv(const YOrbit& orbit) {
  std::string out = "index,arc,t\n";
  for (std::size_t i = 0; i < orbit.points.size(); ++i)
    out += std::to_string(orbit.first_index + static_cast<long>(i)) + "," +
           std::to_string(orbit.points[i].arc) + "," + orbit.points[i].t.str() + "\n";
  return out;
}

YOrbit y_orbit_from_csv(const std::string& text) {
  return guarded("orbit CSV", [&] {
    auto rows = csv_rows(text);
    if (rows.empty() || rows[0] != "index,arc,t") throw ParseError("expected header 'index,arc,t'");
    YOrbit orbit;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      auto cells = split(rows[r]);
      if (cells.size() != 3) throw ParseError("row " + std::to_string(r) + " needs 3 cells");
      long index = std::stol(cells[0]);
      if (r == 1) orbit.first_index = index;
      else if (index != orbit.first_index + static_cast<long>(r) - 1)
        throw ParseError("indices must be consecutive");
      orbit.points.push_back({static_cast<std::size_t>(std::stoul(cells[1])), Rational::parse(cells[2])});
    }
    if (orbit.points.empty()) throw ParseError("orbit has no points");
    return orbit;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace continua::io
