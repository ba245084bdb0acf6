#include "continua/quasi_attractor.hpp"

#include <algorithm>

namespace continua {
namespace {

struct Box {
  Point2 lo;
  Point2 hi;
};

// Per-model data reused by every perturbation step.
struct Geometry {
  std::vector<ArcMetric> metrics;
  std::vector<Box> boxes;

  explicit Geometry(const YModel& model) {
    for (std::size_t a = 0; a < model.arcs().size(); ++a) {
      metrics.push_back(arc_metric(model, a));
      const auto& poly = model.arc(a).polyline;
      Box b{poly[0], poly[0]};
      for (const auto& p : poly) {
        b.lo = {min(b.lo.x, p.x), min(b.lo.y, p.y)};
        b.hi = {max(b.hi.x, p.x), max(b.hi.y, p.y)};
      }
      boxes.push_back(std::move(b));
    }
  }

  static Rational box_dist2(const Box& b, const Point2& p) {
    Rational dx = max(Rational(0), max(b.lo.x - p.x, p.x - b.hi.x));
    Rational dy = max(Rational(0), max(b.lo.y - p.y, p.y - b.hi.y));
    return dx * dx + dy * dy;
  }
};

YPoint perturb_with(const YModel& model, const Geometry& geo, const YPoint& p,
                    const Rational& delta, std::mt19937_64& rng, const NoiseConfig& noise) {
  if (delta.is_zero()) return p;
  const Point2 pp = embed(model, p);
  const Rational reach2 = delta * delta;
  std::vector<Projection> candidates;
  for (std::size_t a = 0; a < model.arcs().size(); ++a) {
    if (a == p.arc) {
      candidates.push_back({p, Rational(0)});
      continue;
    }
    if (!(Geometry::box_dist2(geo.boxes[a], pp) < reach2)) continue;
    auto pr = project_to_arc(model, a, pp);
    if (pr.dist2 < reach2) candidates.push_back(std::move(pr));
  }
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  Projection c = candidates[pick(rng)];
  Rational budget = delta - (c.dist2.is_zero() ? Rational(0) : sqrt_upper(c.dist2));
  if (budget.sign() <= 0) {
    c = {p, Rational(0)};
    budget = delta;
  }
  const long den = noise.denominator;
  std::uniform_int_distribution<long> u(-(den - 1), den - 1);
  Rational dt = budget * Rational(u(rng), den) / geo.metrics[c.point.arc].lip_up;
  Rational t = c.point.t + dt;
  if (t.sign() < 0) t = Rational(0);
  if (Rational(1) < t) t = Rational(1);
  return {c.point.arc, t};
}

std::vector<std::size_t> adjacent_arcs(const YModel& model, std::size_t arc) {
  std::vector<std::size_t> out;
  const Arc& a = model.arc(arc);
  for (std::size_t v : {a.start, a.end})
    for (std::size_t b : model.arcs_at(v))
      if (b != arc && std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  return out;
}

std::string arc_name(const YModel& model, std::size_t arc) {
  return "arc " + std::to_string(arc) + " (" + model.arc(arc).label + ")";
}

}  // namespace

YPoint perturb(const YModel& model, const YPoint& p, const Rational& delta, std::mt19937_64& rng,
               const NoiseConfig& noise) {
  return perturb_with(model, Geometry(model), p, delta, rng, noise);
}

YOrbit generate_y_pseudo_orbit(const YModel& model, const YHomeo& g, const Rational& delta,
                               unsigned steps, const YPoint& x0, std::uint64_t seed,
                               const NoiseConfig& noise) {
  if (delta.sign() < 0) throw DomainError("pseudo-orbit needs delta >= 0");
  validate(model, g);
  embed(model, x0);
  Geometry geo(model);
  std::mt19937_64 rng(seed);
  YOrbit orbit{0, {x0}, delta};
  orbit.points.reserve(steps + 1);
  for (unsigned i = 0; i < steps; ++i)
    orbit.points.push_back(perturb_with(model, geo, apply(g, orbit.points.back()), delta, rng, noise));
  return orbit;
}

Rational max_jump_squared(const YModel& model, const YHomeo& g, const YOrbit& orbit) {
  if (orbit.points.empty()) throw DomainError("empty pseudo-orbit");
  Rational worst(0);
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i)
    worst = max(worst, y_distance_squared(model, apply(g, orbit.points[i]), orbit.points[i + 1]));
  return worst;
}

bool in_neighborhood(const YModel& model, const Neighborhood& v, const YPoint& p) {
  if (p.arc == v.arc) return true;
  if (auto vx = vertex_of(model, p)) {
    const Arc& a = model.arc(v.arc);
    if (*vx == a.start || *vx == a.end) return true;
  }
  for (const auto& s : v.stubs) {
    if (s.arc != p.arc) continue;
    if (s.at_start ? p.t < s.cut : s.cut < p.t) return true;
  }
  return false;
}

Neighborhood find_inward_neighborhood(const YModel& model, const YHomeo& g, std::size_t arc,
                                      const Rational& alpha) {
  if (alpha.sign() <= 0) throw DomainError("neighborhood needs alpha > 0");
  validate(model, g);
  const Arc& a = model.arc(arc);
  const Rational reach2 = alpha * alpha;
  Neighborhood out{arc, {}};
  for (std::size_t vertex : {a.start, a.end}) {
    const Point2& vp = model.vertices()[vertex].position;
    for (std::size_t b : model.arcs_at(vertex)) {
      if (b == arc) continue;
      const bool at_start = model.arc(b).start == vertex;
      const Orientation toward = at_start ? Orientation::L : Orientation::R;
      std::vector<OrientedInterval> flowing;
      for (auto& w : wandering_intervals(g.maps[b]))
        if (w.orientation == toward) flowing.push_back(std::move(w));
      if (!at_start) std::reverse(flowing.begin(), flowing.end());  // nearest to the vertex first

      auto close = [&](const Rational& c) { return dist2(embed(model, {b, c}), vp) < reach2; };
      std::optional<Rational> cut;
      for (const auto& w : flowing) {
        Rational mid = (w.a + w.b) / Rational(2);
        if (!close(mid)) break;
        cut = mid;
      }
      if (!cut && !flowing.empty()) {
        const auto& w = flowing.front();
        Rational c = (w.a + w.b) / Rational(2);
        for (int j = 0; j < 200 && !cut; ++j) {
          c = at_start ? w.a + (c - w.a) / Rational(2) : w.b - (w.b - c) / Rational(2);
          if (close(c)) cut = c;
        }
      }
      if (!cut)
        throw NoInwardStub(arc_name(model, b) + " has no wandering interval flowing toward " +
                           model.vertices()[vertex].label + " within " + alpha.str());
      out.stubs.push_back({b, vertex, at_start, *cut});
    }
  }
  return out;
}

bool image_closure_inside(const YHomeo& g, const Neighborhood& v) {
  for (const auto& s : v.stubs) {
    Rational gc = g.maps.at(s.arc)(s.cut);
    if (s.at_start ? !(gc < s.cut) : !(s.cut < gc)) return false;
  }
  return true;
}

std::optional<Rational> image_clearance_squared(const YModel& model, const YHomeo& g,
                                                const Neighborhood& v) {
  std::vector<std::vector<Point2>> image{model.arc(v.arc).polyline};
  for (const auto& s : v.stubs) {
    Rational gc = g.maps.at(s.arc)(s.cut);
    image.push_back(s.at_start ? arc_piece(model, s.arc, Rational(0), gc)
                               : arc_piece(model, s.arc, gc, Rational(1)));
  }
  std::optional<Rational> best;
  for (std::size_t b = 0; b < model.arcs().size(); ++b) {
    if (b == v.arc) continue;
    Rational lo(0), hi(1);
    for (const auto& s : v.stubs) {
      if (s.arc != b) continue;
      if (s.at_start)
        lo = max(lo, s.cut);
      else
        hi = min(hi, s.cut);
    }
    if (hi < lo) continue;
    auto outside = arc_piece(model, b, lo, hi);
    for (const auto& piece : image) {
      Rational d = polyline_dist2(outside, piece);
      if (!best || d < *best) best = d;
    }
  }
  return best;
}

QuasiAttractorCertificate quasi_attractor_certificate(const YModel& model, const YHomeo& g,
                                                      std::size_t arc, const Rational& eps,
                                                      const CertificateConfig& config) {
  if (eps.sign() <= 0) throw DomainError("certificate needs eps > 0");
  validate(model, g);
  const PLHomeo& f = g.maps.at(arc);
  const ArcMetric metric = arc_metric(model, arc);

  // delta1 from the arc-level modulus at eps/2, moved to plane distances.
  Rational half = eps / Rational(2);
  Rational modulus =
      estimate_shadowing_modulus(f, half / metric.lip_up, config.trials, config.seed, config.modulus);
  if (modulus.is_zero())
    throw CertificationFailure(arc_name(model, arc) + ": no positive shadowing modulus");
  Rational delta1 = modulus / metric.inv_lip;

  auto plane_lipschitz = [&](std::size_t b) {
    ArcMetric m = arc_metric(model, b);
    return max_slope(g.maps[b]) * m.lip_up * m.inv_lip;
  };
  Rational lip = plane_lipschitz(arc);
  for (std::size_t b : adjacent_arcs(model, arc)) lip = max(lip, plane_lipschitz(b));
  lip *= config.kappa;

  Rational third = delta1 / Rational(3);
  // Half the bound, rounded down to a power of two.
  Rational bound = min(min(half, third), third / lip) / Rational(2);
  unsigned k = 0;
  while (bound < pow2_inv(k)) ++k;
  Rational alpha = pow2_inv(k);
  Neighborhood v = find_inward_neighborhood(model, g, arc, alpha);
  if (!image_closure_inside(g, v))
    throw CertificationFailure(arc_name(model, arc) + ": closure of g(V) leaves V");
  auto clearance = image_clearance_squared(model, g, v);

  for (unsigned j = 0; j < config.delta_levels; ++j) {
    Rational delta = eps * pow2_inv(j);
    if (!(delta < third)) continue;
    if (clearance && *clearance < delta * delta) continue;
    return {arc, eps, delta1, alpha, lip, std::move(v), delta};
  }
  throw CertificationFailure(arc_name(model, arc) + ": no grid delta keeps B_delta(g(V)) in V");
}

GlobalShadowing global_shadowing_delta(const YModel& model, const YHomeo& g, const Rational& eps,
                                       const CertificateConfig& config) {
  GlobalShadowing out;
  for (std::size_t a = 0; a < model.arcs().size(); ++a) {
    try {
      out.certificates.push_back(quasi_attractor_certificate(model, g, a, eps, config));
      out.cover.emplace_back(a, out.certificates.back().delta);
    } catch (const std::runtime_error& e) {
      out.failures.emplace(a, e.what());
    }
  }

  std::vector<YPoint> uncovered;
  constexpr long kSamples = 16;
  for (std::size_t b = 0; b < model.arcs().size(); ++b) {
    for (long j = 0; j <= kSamples; ++j) {
      YPoint p{b, Rational(j, kSamples)};
      Point2 pp = embed(model, p);
      bool covered = std::any_of(out.cover.begin(), out.cover.end(), [&](const auto& c) {
        return c.first == b || project_to_arc(model, c.first, pp).dist2 < c.second * c.second;
      });
      if (!covered) uncovered.push_back(p);
    }
  }
  if (!uncovered.empty() || out.cover.empty()) {
    std::string msg = std::to_string(uncovered.size()) + " sample points are not covered";
    if (!out.failures.empty())
      msg += "; first certificate failure: " + out.failures.begin()->second;
    throw CoverFailure(msg, std::move(uncovered));
  }
  out.delta = out.cover.front().second;
  for (const auto& c : out.cover) out.delta = min(out.delta, c.second);
  return out;
}

std::optional<YPoint> shadow_from_arc(const YModel& model, const YHomeo& g, std::size_t arc,
                                      const YOrbit& orbit, const Rational& eps) {
  if (orbit.first_index != 0) throw DomainError("model shadowing takes forward orbits");
  if (orbit.points.empty()) throw DomainError("empty pseudo-orbit");
  const PLHomeo& f = g.maps.at(arc);
  std::vector<Point2> xs;
  IntervalOrbit projected{0, {}, orbit.delta};
  Rational worst(0);
  for (const auto& x : orbit.points) {
    xs.push_back(embed(model, x));
    auto pr = project_to_arc(model, arc, xs.back());
    projected.points.push_back(pr.point.t);
    worst = max(worst, pr.dist2);
  }
  Rational slack = eps - (worst.is_zero() ? Rational(0) : sqrt_upper(worst));
  if (slack.sign() <= 0) return std::nullopt;
  auto set = shadowing_set(f, projected, slack / arc_metric(model, arc).lip_up);
  if (set.empty()) return std::nullopt;

  const Rational eps2 = eps * eps;
  const Interval& s = set.intervals.front();
  for (const Rational& z : {(s.lo + s.hi) / Rational(2), s.lo, s.hi}) {
    Rational y = z;
    bool ok = true;
    for (const auto& x : xs) {
      if (!(dist2(embed(model, {arc, y}), x) < eps2)) {
        ok = false;
        break;
      }
      y = f(y);
    }
    if (ok) return YPoint{arc, z};
  }
  return std::nullopt;
}

std::optional<YPoint> shadow_on_model(
    const YModel& model, const YHomeo& g, const YOrbit& orbit, const Rational& eps,
    const std::vector<std::pair<std::size_t, Rational>>& cover) {
  if (orbit.points.empty()) throw DomainError("empty pseudo-orbit");
  const YPoint& x0 = orbit.points.front();
  const Point2 p0 = embed(model, x0);
  std::vector<std::pair<Rational, std::size_t>> order;
  auto consider = [&](std::size_t a, const std::optional<Rational>& reach) {
    Rational d2 = a == x0.arc ? Rational(-1) : project_to_arc(model, a, p0).dist2;
    if (reach && !(d2 < *reach * *reach)) return;
    order.emplace_back(d2, a);
  };
  if (cover.empty()) {
    for (std::size_t a = 0; a < model.arcs().size(); ++a) consider(a, std::nullopt);
  } else {
    for (const auto& [a, d] : cover) consider(a, d);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [d2, a] : order)
    if (auto w = shadow_from_arc(model, g, a, orbit, eps)) return w;
  return std::nullopt;
}

SamplingReport sample_certificates(const YModel& model, const YHomeo& g,
                                   const std::vector<QuasiAttractorCertificate>& certificates,
                                   unsigned orbits, unsigned steps, std::uint64_t seed) {
  if (certificates.empty()) throw DomainError("no certificates to sample");
  Geometry geo(model);
  SamplingReport report{orbits, steps, {}};
  for (unsigned i = 0; i < orbits; ++i) {
    const auto& c = certificates[i % certificates.size()];
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uniform_int_distribution<long> u(0, 1L << 20);
    YPoint on_arc{c.arc, Rational(u(rng), 1L << 20)};
    YPoint x0 = perturb_with(model, geo, on_arc, c.delta, rng, {});
    auto orbit = generate_y_pseudo_orbit(model, g, c.delta, steps, x0, rng());
    if (!shadow_from_arc(model, g, c.arc, orbit, c.epsilon)) report.failed.push_back(i);
  }
  return report;
}

SamplingReport sample_global(const YModel& model, const YHomeo& g, const GlobalShadowing& global,
                             const Rational& eps, unsigned orbits, unsigned steps,
                             std::uint64_t seed) {
  SamplingReport report{orbits, steps, {}};
  for (unsigned i = 0; i < orbits; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uniform_int_distribution<std::size_t> arc(0, model.arcs().size() - 1);
    std::uniform_int_distribution<long> u(0, 1L << 20);
    std::size_t a = arc(rng);
    YPoint x0{a, Rational(u(rng), 1L << 20)};
    auto orbit = generate_y_pseudo_orbit(model, g, global.delta, steps, x0, rng());
    if (!shadow_on_model(model, g, orbit, eps, global.cover)) report.failed.push_back(i);
  }
  return report;
}

}  // namespace continua
