#include "continua/continuum.hpp"

#include "continua/cantor.hpp"

#include <cmath>
#include <deque>
#include <numbers>

namespace continua {
namespace {

constexpr std::size_t kCircleVertices = 64;
constexpr long kCircleDen = 10000;

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational dot(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y);
}

Point2 lerp(const Point2& a, const Point2& b, const Rational& u) {
  return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

// floor(q) for q >= 0 as an index.
std::size_t floor_index(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  return static_cast<std::size_t>(f.get_ui());
}

// Segment i and local parameter u with t = (i + u) / k.
std::pair<std::size_t, Rational> locate(const Arc& a, const Rational& t) {
  const std::size_t k = a.segments();
  Rational pos = t * Rational(static_cast<long>(k));
  std::size_t i = std::min(floor_index(pos), k - 1);
  return {i, pos - Rational(static_cast<long>(i))};
}

// Rational point on the unit circle at angle close to theta, via the
// tangent half-angle substitution with a bounded-denominator slope.
Point2 circle_point(double theta) {
  const double half = theta / 2;
  const double s = std::tan(half);
  if (std::abs(s) <= 1) {
    Rational r(std::lround(s * kCircleDen), kCircleDen);
    Rational d = Rational(1) + r * r;
    return {(Rational(1) - r * r) / d, Rational(2) * r / d};
  }
  Rational r(std::lround(kCircleDen / s), kCircleDen);
  Rational d = Rational(1) + r * r;
  return {(r * r - Rational(1)) / d, Rational(2) * r / d};
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y &&
         p.y <= max(a.y, b.y);
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  int d1 = cross(c, d, a).sign();
  int d2 = cross(c, d, b).sign();
  int d3 = cross(a, b, c).sign();
  int d4 = cross(a, b, d).sign();
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

// Common points of two intersecting segments: a single point, or nullopt
// for a collinear overlap of positive length.
std::optional<Point2> intersection_point(const Point2& a, const Point2& b, const Point2& c,
                                         const Point2& d) {
  Rational den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
  if (!den.is_zero()) {
    Rational t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den;
    return lerp(a, b, t);
  }
  // Collinear: project onto the dominant direction of [a, b].
  std::vector<Point2> shared;
  for (const Point2* p : {&a, &b}) if (on_segment(c, d, *p)) shared.push_back(*p);
  for (const Point2* p : {&c, &d}) if (on_segment(a, b, *p)) shared.push_back(*p);
  for (std::size_t i = 1; i < shared.size(); ++i)
    if (!(shared[i] == shared[0])) return std::nullopt;
  return shared.front();
}

std::string point_str(const Point2& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

}  // namespace

Rational dist2(const Point2& a, const Point2& b) {
  Rational dx = a.x - b.x;
  Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::pair<Rational, Rational> point_segment_dist2(const Point2& p, const Point2& a,
                                                  const Point2& b) {
  Rational len2 = dist2(a, b);
  if (len2.is_zero()) return {dist2(p, a), Rational(0)};
  Rational u = dot(a, p, b) / len2;
  if (u.sign() < 0) u = Rational(0);
  if (Rational(1) < u) u = Rational(1);
  return {dist2(p, lerp(a, b, u)), u};
}

Rational segment_dist2(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  if (segments_intersect(a, b, c, d)) return Rational(0);
  Rational best = point_segment_dist2(a, c, d).first;
  best = min(best, point_segment_dist2(b, c, d).first);
  best = min(best, point_segment_dist2(c, a, b).first);
  return min(best, point_segment_dist2(d, a, b).first);
}

YModel::YModel(unsigned vertical_segments, std::vector<Vertex> vertices, std::vector<Arc> arcs)
    : m_(vertical_segments), vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
  if (arcs_.empty()) throw MalformedModel("model has no arcs");
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    const std::string name = "arc " + std::to_string(i) + " (" + a.label + ")";
    if (a.start >= vertices_.size() || a.end >= vertices_.size())
      throw MalformedModel(name + ": endpoint id out of range");
    if (a.start == a.end) throw MalformedModel(name + ": endpoints coincide");
    if (a.polyline.size() < 2) throw MalformedModel(name + ": polyline needs two points");
    if (a.embedding == Embedding::Segment && a.polyline.size() != 2)
      throw MalformedModel(name + ": segment embedding needs exactly two points");
    if (!(a.polyline.front() == vertices_[a.start].position) ||
        !(a.polyline.back() == vertices_[a.end].position))
      throw MalformedModel(name + ": polyline does not join its endpoint vertices");
    for (std::size_t j = 0; j + 1 < a.polyline.size(); ++j)
      if (a.polyline[j] == a.polyline[j + 1])
        throw MalformedModel(name + ": repeated polyline point");
  }
}

std::vector<std::size_t> YModel::arcs_at(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (arcs_[i].start == v || arcs_[i].end == v) out.push_back(i);
  return out;
}

std::optional<std::size_t> YModel::find_vertex(const std::string& label) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].label == label) return i;
  return std::nullopt;
}

YModel build_y(unsigned m) {
  if (m == 0) throw DomainError("build_y needs M >= 1");
  auto x_of = [](unsigned n) { return Rational(-1) + Rational(2, static_cast<long>(n)); };

  std::vector<Vertex> vs;
  vs.push_back({"p~", {Rational(-1), Rational(0)}});
  // base[n] is the vertex at (x_n, 0); base[1] = (1, 0).
  std::vector<std::size_t> base(m + 1), tip(m + 1);
  for (unsigned n = m; n >= 1; --n) {
    base[n] = vs.size();
    vs.push_back({"b" + std::to_string(n), {x_of(n), Rational(0)}});
  }
  for (unsigned n = 1; n <= m; ++n) {
    tip[n] = vs.size();
    vs.push_back({"t" + std::to_string(n), {x_of(n), Rational(1, static_cast<long>(n))}});
  }

  std::vector<Arc> arcs;
  Arc circle{"circle", 0, base[1], Embedding::Polyline, {}};
  for (std::size_t k = 0; k < kCircleVertices; ++k) {
    if (k == 0) {
      circle.polyline.push_back(vs[0].position);
    } else if (k + 1 == kCircleVertices) {
      circle.polyline.push_back(vs[base[1]].position);
    } else {
      double theta = std::numbers::pi *
                     (1.0 + static_cast<double>(k) / static_cast<double>(kCircleVertices - 1));
      circle.polyline.push_back(circle_point(theta));
    }
  }
  arcs.push_back(std::move(circle));

  std::size_t left = 0;
  for (unsigned n = m; n >= 1; --n) {
    std::size_t right = base[n];
    arcs.push_back({"h" + std::to_string(n), left, right, Embedding::Segment,
                    {vs[left].position, vs[right].position}});
    left = right;
  }
  for (unsigned n = 1; n <= m; ++n)
    arcs.push_back({"v" + std::to_string(n), base[n], tip[n], Embedding::Segment,
                    {vs[base[n]].position, vs[tip[n]].position}});
  return YModel(m, std::move(vs), std::move(arcs));
}

YModel build_interval_model() {
  std::vector<Vertex> vs{{"a", {Rational(0), Rational(0)}}, {"b", {Rational(1), Rational(0)}}};
  std::vector<Arc> arcs{{"interval", 0, 1, Embedding::Segment, {vs[0].position, vs[1].position}}};
  return YModel(0, std::move(vs), std::move(arcs));
}

std::optional<std::size_t> vertex_of(const YModel& model, const YPoint& p) {
  const Arc& a = model.arc(p.arc);
  if (p.t.is_zero()) return a.start;
  if (p.t == Rational(1)) return a.end;
  return std::nullopt;
}

YPoint canonical(const YModel& model, const YPoint& p) {
  auto v = vertex_of(model, p);
  if (!v) return p;
  std::size_t first = model.arcs_at(*v).front();
  const Arc& a = model.arc(first);
  return {first, a.start == *v ? Rational(0) : Rational(1)};
}

bool same_point(const YModel& model, const YPoint& p, const YPoint& q) {
  return canonical(model, p) == canonical(model, q);
}

Point2 embed(const YModel& model, const YPoint& p) {
  if (p.t.sign() < 0 || Rational(1) < p.t) throw DomainError("arc parameter outside [0, 1]");
  const Arc& a = model.arc(p.arc);
  auto [i, u] = locate(a, p.t);
  return lerp(a.polyline[i], a.polyline[i + 1], u);
}

Rational y_distance_squared(const YModel& model, const YPoint& p, const YPoint& q) {
  return dist2(embed(model, p), embed(model, q));
}

Rational sqrt_upper(const Rational& q) { return sqrt_enclosure(q, 10'000'000UL).hi; }

Rational y_distance(const YModel& model, const YPoint& p, const YPoint& q) {
  return sqrt_upper(y_distance_squared(model, p, q));
}

ArcMetric arc_metric(const YModel& model, std::size_t arc) {
  const Arc& a = model.arc(arc);
  if (a.embedding == Embedding::Segment) {
    auto len = sqrt_enclosure(dist2(a.polyline[0], a.polyline[1]));
    return {len.hi, Rational(1) / len.lo};
  }
  Rational lo2 = dist2(a.polyline[0], a.polyline[1]);
  Rational hi2 = lo2;
  for (std::size_t i = 1; i < a.segments(); ++i) {
    Rational c = dist2(a.polyline[i], a.polyline[i + 1]);
    lo2 = min(lo2, c);
    hi2 = max(hi2, c);
  }
  const Rational k(static_cast<long>(a.segments()));
  // Along an inscribed polyline of a convex arc turning at most a half turn,
  // path length is at most pi/2 < 8/5 times the chord.
  return {k * sqrt_upper(hi2), Rational(8, 5) / (k * sqrt_enclosure(lo2).lo)};
}

Projection project_to_arc(const YModel& model, std::size_t arc, const Point2& p) {
  const Arc& a = model.arc(arc);
  const Rational k(static_cast<long>(a.segments()));
  std::optional<Projection> best;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    auto [d2, u] = point_segment_dist2(p, a.polyline[i], a.polyline[i + 1]);
    if (!best || d2 < best->dist2) best = Projection{{arc, (Rational(static_cast<long>(i)) + u) / k}, d2};
  }
  return *best;
}

std::vector<Point2> arc_piece(const YModel& model, std::size_t arc, const Rational& t0,
                              const Rational& t1) {
  if (t1 < t0) throw DomainError("arc_piece needs t0 <= t1");
  const Arc& a = model.arc(arc);
  std::vector<Point2> out{embed(model, {arc, t0})};
  const Rational k(static_cast<long>(a.segments()));
  for (std::size_t i = 1; i < a.segments(); ++i) {
    Rational ti = Rational(static_cast<long>(i)) / k;
    if (t0 < ti && ti < t1) out.push_back(a.polyline[i]);
  }
  out.push_back(embed(model, {arc, t1}));
  return out;
}

Rational polyline_dist2(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  std::optional<Rational> best;
  const std::size_t na = a.size() == 1 ? 1 : a.size() - 1;
  const std::size_t nb = b.size() == 1 ? 1 : b.size() - 1;
  for (std::size_t i = 0; i < na; ++i) {
    const Point2& a1 = a.size() == 1 ? a[0] : a[i + 1];
    for (std::size_t j = 0; j < nb; ++j) {
      const Point2& b1 = b.size() == 1 ? b[0] : b[j + 1];
      Rational d = segment_dist2(a[i], a1, b[j], b1);
      if (!best || d < *best) best = d;
      if (best->is_zero()) return *best;
    }
  }
  return *best;
}

YHomeo identity_y(const YModel& model) {
  return {std::vector<PLHomeo>(model.arcs().size(), PLHomeo::identity(Rational(0), Rational(1)))};
}

void validate(const YModel& model, const YHomeo& g) {
  if (g.maps.size() != model.arcs().size())
    throw MalformedModel("homeomorphism has " + std::to_string(g.maps.size()) +
                         " arc maps for " + std::to_string(model.arcs().size()) + " arcs");
  for (const auto& f : g.maps)
    if (!f.lo().is_zero() || f.hi() != Rational(1))
      throw MalformedModel("arc maps must live on [0, 1]");
}

YHomeo build_g_star(const YModel& model, unsigned depth, std::optional<unsigned> edge_depth) {
  PLHomeo f = build_f_star_edges(depth, edge_depth.value_or(depth));
  return {std::vector<PLHomeo>(model.arcs().size(), f)};
}

YPoint apply(const YHomeo& g, const YPoint& p) { return {p.arc, g.maps.at(p.arc)(p.t)}; }

YPoint apply_inverse(const YHomeo& g, const YPoint& p) {
  return {p.arc, g.maps.at(p.arc).preimage(p.t)};
}

ArcDecompositionReport check_arc_decomposition(const YModel& model) {
  ArcDecompositionReport report;
  const auto& vs = model.vertices();
  const auto& arcs = model.arcs();
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.problems.push_back(std::move(msg));
  };

  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i].position == vs[j].position)
        fail("vertices " + vs[i].label + " and " + vs[j].label + " coincide");
    if (model.arcs_at(i).empty()) fail("vertex " + vs[i].label + " lies on no arc");
  }

  auto shared_vertex_at = [&](const Arc& a, const Arc& b, const Point2& p) {
    for (std::size_t v : {a.start, a.end})
      if ((v == b.start || v == b.end) && vs[v].position == p) return true;
    return false;
  };

  for (std::size_t ia = 0; ia < arcs.size(); ++ia) {
    const Arc& a = arcs[ia];
    for (std::size_t ib = ia; ib < arcs.size(); ++ib) {
      const Arc& b = arcs[ib];
      for (std::size_t i = 0; i < a.segments(); ++i) {
        for (std::size_t j = (ia == ib ? i + 1 : 0); j < b.segments(); ++j) {
          const Point2 &p0 = a.polyline[i], &p1 = a.polyline[i + 1];
          const Point2 &q0 = b.polyline[j], &q1 = b.polyline[j + 1];
          if (!segments_intersect(p0, p1, q0, q1)) continue;
          auto x = intersection_point(p0, p1, q0, q1);
          bool allowed = false;
          if (x) {
            if (ia == ib)
              allowed = j == i + 1 && *x == p1;
            else
              allowed = shared_vertex_at(a, b, *x);
          }
          if (!allowed)
            fail("arcs " + a.label + " and " + b.label + " meet away from a shared vertex" +
                 (x ? " at " + point_str(*x) : std::string(" along a segment")));
        }
      }
    }
  }

  // Fixedness cascade: p~ is fixed, so every arc at a fixed vertex is
  // invariant and its other end is fixed too.
  std::size_t root = model.find_vertex("p~").value_or(0);
  std::vector<bool> seen(vs.size(), false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    report.cascade.push_back(v);
    for (std::size_t ai : model.arcs_at(v)) {
      std::size_t w = arcs[ai].start == v ? arcs[ai].end : arcs[ai].start;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  for (std::size_t v = 0; v < vs.size(); ++v)
    if (!seen[v]) fail("vertex " + vs[v].label + " is not connected to " + vs[root].label);

  report.note =
      "arc interiors are free arcs by construction (simple polylines meeting only at shared "
      "vertices); invariance of each arc and fixedness of every vertex are assumed by the "
      "per-arc representation of homeomorphisms, following the cascade order listed";
  return report;
}

}  // namespace continua
