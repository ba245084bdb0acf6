#pragma once

// Exact polyline model of the plane continuum Y: the lower unit half circle,
// the base segment [-1, 1] x {0} cut at branch points, and the first M
// vertical segments {-1 + 2/n} x [0, 1/n]. Homeomorphisms are per-arc PL maps
// fixing every vertex.

#include "continua/plmap.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace continua {

struct MalformedModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

Rational dist2(const Point2& a, const Point2& b);
// Exact squared distance from p to the segment [a, b], and the parameter of
// the nearest point in [0, 1].
std::pair<Rational, Rational> point_segment_dist2(const Point2& p, const Point2& a,
                                                  const Point2& b);
// Exact squared distance between two closed segments.
Rational segment_dist2(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

struct Vertex {
  std::string label;
  Point2 position;
};

enum class Embedding { Segment, Polyline };

// Arc parameter t in [0, 1] runs uniformly over the polyline's segments:
// segment i covers [i/k, (i+1)/k] and is traversed affinely.
struct Arc {
  std::string label;
  std::size_t start = 0;
  std::size_t end = 0;
  Embedding embedding = Embedding::Segment;
  std::vector<Point2> polyline;
  std::size_t segments() const { return polyline.size() - 1; }
};

class YModel {
 public:
  // Validates indices and that each polyline joins its endpoint vertices.
  YModel(unsigned vertical_segments, std::vector<Vertex> vertices, std::vector<Arc> arcs);

  unsigned vertical_segments() const { return m_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t id) const { return arcs_.at(id); }
  // Arcs with an end at vertex v, in id order.
  std::vector<std::size_t> arcs_at(std::size_t v) const;
  std::optional<std::size_t> find_vertex(const std::string& label) const;

 private:
  unsigned m_;
  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
};

// Vertex 0 is p~ = (-1, 0). Arc 0 is the half circle from p~ to (1, 0) as a
// 64-vertex inscribed polyline with rational vertices on the circle; then the
// M base sub-segments left to right; then the verticals V_1..V_M from base to
// tip. Every arc is parameterised away from p~.
YModel build_y(unsigned m);
// A single arc [0, 1] x {0}.
YModel build_interval_model();

struct YPoint {
  std::size_t arc = 0;
  Rational t;
  friend bool operator==(const YPoint&, const YPoint&) = default;
};

std::optional<std::size_t> vertex_of(const YModel& model, const YPoint& p);
// Vertices are stored as (lowest incident arc id, its end parameter).
YPoint canonical(const YModel& model, const YPoint& p);
bool same_point(const YModel& model, const YPoint& p, const YPoint& q);

Point2 embed(const YModel& model, const YPoint& p);
Rational y_distance_squared(const YModel& model, const YPoint& p, const YPoint& q);
// Exact root when rational, otherwise the upper end of an enclosure of
// width below 1e-6.
Rational y_distance(const YModel& model, const YPoint& p, const YPoint& q);
// Upper bound of sqrt(q) with the same rule.
Rational sqrt_upper(const Rational& q);

// Distortion bounds between parameter and plane distance on one arc:
// |embed(s) - embed(t)| <= lip_up * |s - t| and |s - t| <= inv_lip * |embed(s) - embed(t)|.
struct ArcMetric {
  Rational lip_up;
  Rational inv_lip;
};
ArcMetric arc_metric(const YModel& model, std::size_t arc);

struct Projection {
  YPoint point;
  Rational dist2;
};
// Nearest point of the arc (smallest parameter on ties).
Projection project_to_arc(const YModel& model, std::size_t arc, const Point2& p);

// Polyline of the arc restricted to parameters [t0, t1].
std::vector<Point2> arc_piece(const YModel& model, std::size_t arc, const Rational& t0,
                              const Rational& t1);
// Exact squared distance between two polylines.
Rational polyline_dist2(const std::vector<Point2>& a, const std::vector<Point2>& b);

struct YHomeo {
  std::vector<PLHomeo> maps;  // indexed by arc id, each on [0, 1]
};

YHomeo identity_y(const YModel& model);
// Throws MalformedModel when g does not fit the model.
void validate(const YModel& model, const YHomeo& g);

// f*_N transported to every arc along its parameter. With edge_depth > N the
// outermost gaps of deeper levels are added as well, so that wandering
// intervals reach every vertex within 3^-(edge_depth+1) of the arc parameter.
YHomeo build_g_star(const YModel& model, unsigned depth, std::optional<unsigned> edge_depth = {});

YPoint apply(const YHomeo& g, const YPoint& p);
YPoint apply_inverse(const YHomeo& g, const YPoint& p);

struct ArcDecompositionReport {
  bool ok = true;
  std::vector<std::string> problems;
  // Vertex ids in the order their fixedness follows from p~ being fixed:
  // breadth-first along arcs starting at p~.
  std::vector<std::size_t> cascade;
  std::string note;
};

ArcDecompositionReport check_arc_decomposition(const YModel& model);

}  // namespace continua
