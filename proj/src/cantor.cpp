#include "continua/cantor.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace continua {
namespace {

unsigned long long pow3(unsigned n) {
  unsigned long long p = 1;
  for (unsigned i = 0; i < n; ++i) p *= 3;
  return p;
}

struct Gap {
  Interval span;
  Orientation orientation;
};

// Assembles canonical generators on disjoint, non-touching gaps of [0, 1].
PLHomeo assemble(std::vector<Gap> gaps) {
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& a, const Gap& b) { return a.span.lo < b.span.lo; });
  std::vector<Rational> xs{Rational(0)}, ys{Rational(0)};
  for (const auto& g : gaps) {
    PLHomeo piece = canonical(g.orientation, g.span.lo, g.span.hi);
    for (std::size_t i = 0; i < piece.size(); ++i) {
      xs.push_back(piece.breakpoints()[i]);
      ys.push_back(piece.values()[i]);
    }
  }
  xs.emplace_back(1);
  ys.emplace_back(1);
  return PLHomeo(std::move(xs), std::move(ys));
}

using Vertices = std::vector<std::pair<Rational, Rational>>;

// Image of y under the PL function through the sorted vertices, and its
// preimage; both assume the argument lies inside the vertex range.
Rational interpolate(const Vertices& v, const Rational& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x,
                             [](const auto& p, const Rational& q) { return p.first < q; });
  if (it == v.end()) return v.back().second;
  if (it->first == x || it == v.begin()) return it->second;
  auto prev = std::prev(it);
  return prev->second +
         (x - prev->first) * (it->second - prev->second) / (it->first - prev->first);
}

Rational interpolate_inverse(const Vertices& v, const Rational& y) {
  auto it = std::lower_bound(v.begin(), v.end(), y,
                             [](const auto& p, const Rational& q) { return p.second < q; });
  if (it == v.end()) return v.back().first;
  if (it->second == y || it == v.begin()) return it->first;
  auto prev = std::prev(it);
  return prev->first +
         (y - prev->second) * (it->first - prev->first) / (it->second - prev->second);
}

// Adds vertices over x-breaks and y-breaks strictly inside the piece so that
// the piece is affine between consecutive vertices and both transport maps
// are affine on every sub-segment.
Vertices refine(const Vertices& piece, std::span<const Rational> x_breaks,
                std::span<const Rational> y_breaks) {
  Vertices out = piece;
  const auto& x0 = piece.front().first;
  const auto& x1 = piece.back().first;
  const auto& y0 = piece.front().second;
  const auto& y1 = piece.back().second;
  for (const auto& b : x_breaks)
    if (x0 < b && b < x1) out.emplace_back(b, interpolate(piece, b));
  for (const auto& b : y_breaks)
    if (y0 < b && b < y1) out.emplace_back(interpolate_inverse(piece, b), b);
  std::sort(out.begin(), out.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& p, const auto& q) { return p.first == q.first; }),
            out.end());
  return out;
}

}  // namespace

Interval j_interval(const TernaryIndex& idx) {
  if (idx.n > 38) throw DomainError("ternary level too deep");
  if (idx.k >= pow3(idx.n)) throw DomainError("ternary position out of range");
  Rational den = pow(Rational(3), idx.n + 1);
  Rational k3(static_cast<long>(3 * idx.k));
  return {(k3 + Rational(1)) / den, (k3 + Rational(2)) / den};
}

bool is_cantor_gap(const TernaryIndex& idx) {
  for (auto k = idx.k, i = 0ULL; i < idx.n; ++i, k /= 3)
    if (k % 3 == 1) return false;
  return true;
}

std::vector<TernaryIndex> cantor_gaps_at(unsigned n) {
  if (n > 30) throw DomainError("ternary level too deep");
  std::vector<TernaryIndex> out;
  out.reserve(std::size_t{1} << n);
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    unsigned long long k = 0;
    for (unsigned bit = n; bit-- > 0;) k = 3 * k + (((mask >> bit) & 1ULL) ? 2 : 0);
    out.push_back({n, k});
  }
  return out;
}

std::vector<TernaryIndex> cantor_gaps(unsigned depth) {
  std::vector<TernaryIndex> out;
  for (unsigned n = 0; n <= depth; ++n) {
    auto level = cantor_gaps_at(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  std::sort(out.begin(), out.end(), [](const TernaryIndex& a, const TernaryIndex& b) {
    return j_interval(a).lo < j_interval(b).lo;
  });
  return out;
}

PLHomeo build_f_star(unsigned depth) { return build_f_star_edges(depth, depth); }

PLHomeo build_f_star_edges(unsigned depth, unsigned edge_depth) {
  std::vector<Gap> gaps;
  for (const auto& idx : cantor_gaps(depth))
    gaps.push_back({j_interval(idx), level_orientation(idx.n)});
  for (unsigned n = depth + 1; n <= edge_depth; ++n) {
    gaps.push_back({j_interval({n, 0}), level_orientation(n)});
    gaps.push_back({j_interval({n, pow3(n) - 1}), level_orientation(n)});
  }
  return assemble(std::move(gaps));
}

bool is_admissible_chain(const std::vector<OrientedInterval>& chain, const Interval& domain) {
  if (chain.empty()) return false;
  if (!(domain.lo < chain.front().a) || !(chain.back().b < domain.hi)) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    Orientation want = i % 2 == 0 ? Orientation::R : Orientation::L;
    if (chain[i].orientation != want || !(chain[i].a < chain[i].b)) return false;
    if (i > 0 && !(chain[i - 1].b < chain[i].a)) return false;
  }
  return true;
}

Rational chain_cost(const std::vector<OrientedInterval>& chain, const Interval& domain) {
  if (!is_admissible_chain(chain, domain)) throw DomainError("chain is not admissible");
  Rational cost = max(chain.front().a - domain.lo, domain.hi - chain.back().b);
  for (std::size_t i = 1; i < chain.size(); ++i) cost = max(cost, chain[i].a - chain[i - 1].b);
  return cost;
}

std::optional<PWitness> check_P_eps(const PLHomeo& f, const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("check_P_eps needs eps > 0");
  const auto w = wandering_intervals(f);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pred(w.size(), kNone);
  // Latest two reachable intervals per orientation: only the immediately
  // preceding interval can share an endpoint, which condition (1) forbids.
  std::array<std::array<std::size_t, 2>, 2> latest{{{kNone, kNone}, {kNone, kNone}}};
  auto slot = [](Orientation o) { return o == Orientation::R ? 0 : 1; };
  std::size_t end = kNone;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& iv = w[i];
    bool reachable = false;
    for (std::size_t j : latest[slot(opposite(iv.orientation))]) {
      if (j == kNone || !(w[j].b < iv.a)) continue;
      if (iv.a - w[j].b < eps) {
        reachable = true;
        pred[i] = j;
      }
      break;
    }
    if (!reachable && iv.orientation == Orientation::R && f.lo() < iv.a && iv.a - f.lo() < eps)
      reachable = true;
    if (!reachable) continue;
    auto& mine = latest[slot(iv.orientation)];
    mine = {i, mine[0]};
    if (iv.b < f.hi() && f.hi() - iv.b < eps) end = i;
  }
  if (end == kNone) return std::nullopt;
  PWitness witness{{}, eps};
  for (std::size_t i = end; i != kNone; i = pred[i]) witness.intervals.push_back(w[i]);
  std::reverse(witness.intervals.begin(), witness.intervals.end());
  return witness;
}

std::optional<Rational> p_eps_threshold_of(const PLHomeo& f) {
  const auto w = wandering_intervals(f);
  std::vector<std::optional<Rational>> best(w.size());
  std::optional<Rational> answer;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& iv = w[i];
    if (iv.orientation == Orientation::R && f.lo() < iv.a) best[i] = iv.a - f.lo();
    for (std::size_t j = 0; j < i; ++j) {
      if (!best[j] || w[j].orientation == iv.orientation || !(w[j].b < iv.a)) continue;
      Rational c = max(*best[j], iv.a - w[j].b);
      if (!best[i] || c < *best[i]) best[i] = c;
    }
    if (best[i] && iv.b < f.hi()) {
      Rational c = max(*best[i], f.hi() - iv.b);
      if (!answer || c < *answer) answer = c;
    }
  }
  return answer;
}

Rational p_eps_threshold(unsigned depth, unsigned max_depth) {
  if (depth > max_depth)
    throw DomainError("depth " + std::to_string(depth) + " exceeds search bound " +
                      std::to_string(max_depth));
  auto t = p_eps_threshold_of(build_f_star(depth));
  if (!t) throw DomainError("f*_N admits no alternating chain");
  return *t;
}

std::vector<std::pair<Rational, Rational>> interval_conjugacy(const PLHomeo& g,
                                                              const OrientedInterval& source,
                                                              const PLHomeo& f,
                                                              const OrientedInterval& target,
                                                              const ConjugacyOptions& options) {
  if (source.orientation != target.orientation)
    throw DomainError("conjugacy between intervals of different orientation");
  // On L-intervals the inverses move points right, and a conjugacy of the
  // inverses is a conjugacy of the maps.
  const bool flip = source.orientation == Orientation::L;
  const PLHomeo G = flip ? invert(g) : g;
  const PLHomeo F = flip ? invert(f) : f;
  const Rational two(2);

  const Rational x0 = (source.a + source.b) / two;
  const Rational y0 = (target.a + target.b) / two;
  Vertices base{{x0, y0}, {G(x0), F(y0)}};

  const Rational src_tol = source.length() * options.tail_fraction;
  const Rational dst_tol = target.length() * options.tail_fraction;

  std::vector<Vertices> forward{base};
  for (unsigned step = 0; step < options.max_steps; ++step) {
    const auto& cur = forward.back();
    if (source.b - cur.back().first <= src_tol && target.b - cur.back().second <= dst_tol) break;
    Vertices fine = refine(cur, G.breakpoints(), F.breakpoints());
    Vertices next;
    next.reserve(fine.size());
    for (const auto& [x, y] : fine) next.emplace_back(G(x), F(y));
    forward.push_back(std::move(next));
  }
  std::vector<Vertices> backward;
  Vertices cur = base;
  for (unsigned step = 0; step < options.max_steps; ++step) {
    if (cur.front().first - source.a <= src_tol && cur.front().second - target.a <= dst_tol)
      break;
    Vertices fine = refine(cur, G.values(), F.values());
    Vertices prev;
    prev.reserve(fine.size());
    for (const auto& [x, y] : fine) prev.emplace_back(G.preimage(x), F.preimage(y));
    backward.push_back(prev);
    cur = std::move(prev);
  }

  Vertices out{{source.a, target.a}};
  auto append = [&out](const Vertices& piece) {
    for (const auto& v : piece)
      if (out.back().first != v.first) out.push_back(v);
  };
  for (auto it = backward.rbegin(); it != backward.rend(); ++it) append(*it);
  for (const auto& piece : forward) append(piece);
  append({{source.b, target.b}});
  return out;
}

ConjugacyReport build_conjugacy(const PLHomeo& g, unsigned depth,
                                const ConjugacyOptions& options) {
  if (depth == 0) throw DomainError("build_conjugacy needs depth >= 1");
  if (g.lo() != Rational(0) || g.hi() != Rational(1))
    throw DomainError("build_conjugacy expects a map of [0, 1]");
  const auto w = wandering_intervals(g);
  std::vector<MatchedPair> matched;
  for (unsigned round = 1; round <= depth; ++round) {
    const unsigned level = round - 1;
    const Orientation want = level_orientation(level);
    const auto targets = cantor_gaps_at(level);
    std::vector<MatchedPair> added;
    for (std::size_t gap = 0; gap <= matched.size(); ++gap) {
      Rational lo = gap == 0 ? g.lo() : matched[gap - 1].source.b;
      Rational hi = gap == matched.size() ? g.hi() : matched[gap].source.a;
      const OrientedInterval* pick = nullptr;
      for (const auto& iv : w) {
        if (iv.orientation != want || iv.a < lo || hi < iv.b) continue;
        if (pick == nullptr || pick->length() < iv.length()) pick = &iv;
      }
      if (pick == nullptr)
        throw InsufficientIntervals("insufficient intervals: round " + std::to_string(round) +
                                    " finds no " + to_char(want) + "-interval in [" + lo.str() +
                                    ", " + hi.str() + "]");
      added.push_back({*pick, targets.at(gap)});
    }
    matched.insert(matched.end(), added.begin(), added.end());
    std::sort(matched.begin(), matched.end(), [](const MatchedPair& p, const MatchedPair& q) {
      return p.source.a < q.source.a;
    });
  }

  const PLHomeo f_star = build_f_star(depth - 1);
  std::vector<Rational> xs{g.lo()}, ys{Rational(0)};
  for (const auto& pair : matched) {
    Interval j = j_interval(pair.target);
    OrientedInterval target{j.lo, j.hi, pair.source.orientation};
    for (auto& [x, y] : interval_conjugacy(g, pair.source, f_star, target, options)) {
      if (x == xs.back()) continue;
      xs.push_back(std::move(x));
      ys.push_back(std::move(y));
    }
  }
  if (xs.back() != g.hi()) {
    xs.push_back(g.hi());
    ys.emplace_back(1);
  }
  PLHomeo h(std::move(xs), std::move(ys));
  Rational residual = c0_distance(compose(h, g), compose(f_star, h));
  return {std::move(h), depth, std::move(matched), std::move(residual)};
}

PLHomeo explode_fixed_point(const PLHomeo& f, const Rational& p, const Rational& delta,
                            Orientation orient) {
  if (delta.sign() <= 0) throw DomainError("explosion radius must be positive");
  const Rational lo = p - delta;
  const Rational hi = p + delta;
  for (const auto& c : fixed_set(f)) {
    if (c.lo <= lo && hi <= c.hi) return splice(f, canonical(orient, lo, hi));
  }
  throw NotInFixedSet("not inside fixed set: [" + lo.str() + ", " + hi.str() +
                      "] is not contained in one fixed component");
}

PLHomeo shrink_toward_identity(const PLHomeo& f, const Rational& eta) {
  if (eta.sign() <= 0) throw DomainError("shrink needs eta > 0");
  auto xs = f.breakpoints();
  auto ys = f.values();
  std::vector<Rational> points(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rational d0 = ys[i] - xs[i];
    Rational d1 = ys[i + 1] - xs[i + 1];
    if (d0 == d1) continue;
    for (const Rational& level : {eta, -eta}) {
      // d(x) = level on the open segment
      Rational t = (level - d0) / (d1 - d0);
      if (t.sign() > 0 && t < Rational(1)) points.push_back(xs[i] + t * (xs[i + 1] - xs[i]));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Rational> values;
  values.reserve(points.size());
  for (const auto& x : points) {
    Rational d = f(x) - x;
    Rational mag = abs(d) - eta;
    if (mag.sign() <= 0) {
      values.push_back(x);
    } else {
      values.push_back(d.sign() > 0 ? x + mag : x - mag);
    }
  }
  return PLHomeo(std::move(points), std::move(values));
}

PLHomeo densify_to_P_eps(const PLHomeo& f, const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("densify needs eps > 0");
  if (check_P_eps(f, eps)) return f;

  // |g^-1 - f^-1| <= |g - f| / min slope, so eta leaves room for both halves
  // of the C0 distance.
  Rational min_slope = max_slope(f);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    min_slope = min(min_slope, (f.values()[i + 1] - f.values()[i]) /
                                   (f.breakpoints()[i + 1] - f.breakpoints()[i]));
  }
  Rational inv_lip = max(Rational(1), Rational(1) / min_slope);
  Rational eta = eps / (Rational(4) * inv_lip);
  // A breakpoint with |f(x) - x| == eta would become an isolated fixed point.
  auto touches = [&](const Rational& e) {
    for (std::size_t i = 0; i < f.size(); ++i)
      if (abs(f.values()[i] - f.breakpoints()[i]) == e) return true;
    return false;
  };
  while (touches(eta)) eta *= Rational(999, 1000);

  PLHomeo g = shrink_toward_identity(f, eta);
  const auto fixed = fixed_set(g);
  const auto wander = wandering_intervals(g);

  struct Plant {
    Rational center;
    Rational radius;
    Orientation orientation;
  };
  std::vector<Plant> plants;
  const Rational quarter = eps / Rational(4);
  for (std::size_t c = 0; c < fixed.size(); ++c) {
    const Interval& comp = fixed[c];
    const Rational len = comp.length();
    if (len.is_zero()) throw std::logic_error("densify: isolated fixed point after shrinking");
    // Orientation of the chain element to the left; a virtual L before the
    // start forces the first planted interval to be R.
    Orientation left = Orientation::L;
    if (c > 0) left = wander[c - 1].orientation;
    std::optional<Orientation> right;
    if (c < wander.size()) right = wander[c].orientation;

    unsigned m = 0;
    Rational width, gap;
    for (;; ++m) {
      bool parity_ok = true;
      if (right) parity_ok = (*right == left) ? (m % 2 == 1) : (m % 2 == 0);
      if (c == 0 && !right && m == 0) parity_ok = false;
      Rational slots(static_cast<long>(2 * (m + 1)));
      width = min(quarter, len / slots);
      gap = (len - Rational(static_cast<long>(m)) * width) / Rational(static_cast<long>(m + 1));
      if (parity_ok && gap < eps) break;
    }
    Orientation o = opposite(left);
    Rational cursor = comp.lo;
    for (unsigned k = 0; k < m; ++k) {
      cursor += gap;
      plants.push_back({cursor + width / Rational(2), width / Rational(2), o});
      cursor += width;
      o = opposite(o);
    }
  }
  for (const auto& p : plants) g = explode_fixed_point(g, p.center, p.radius, p.orientation);
  if (!check_P_eps(g, eps)) throw std::logic_error("densify: construction missed P_eps");
  return g;
}

}  // namespace continua
