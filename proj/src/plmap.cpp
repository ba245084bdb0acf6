#include "continua/plmap.hpp"

#include <algorithm>
#include <iterator>

namespace continua {
namespace {

bool collinear(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
               const Rational& x2, const Rational& y2) {
  return (y1 - y0) * (x2 - x0) == (y2 - y0) * (x1 - x0);
}

void require_same_domain(const PLHomeo& f, const PLHomeo& g, const char* what) {
  if (f.lo() != g.lo() || f.hi() != g.hi())
    throw DomainError(std::string(what) + ": domain mismatch");
}

std::vector<Rational> merged(std::span<const Rational> a, std::span<const Rational> b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PLHomeo::PLHomeo(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  if (breakpoints.size() != values.size())
    throw DomainError("breakpoint and value lists differ in length");
  if (breakpoints.size() < 2) throw DomainError("a PL map needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw DomainError("breakpoints must be strictly increasing");
    if (!(values[i - 1] < values[i])) throw DomainError("values must be strictly increasing");
  }
  if (values.front() != breakpoints.front() || values.back() != breakpoints.back())
    throw DomainError("domain endpoints must be fixed");

  xs_.reserve(breakpoints.size());
  ys_.reserve(values.size());
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    while (xs_.size() >= 2 &&
           collinear(xs_[xs_.size() - 2], ys_[ys_.size() - 2], xs_.back(), ys_.back(),
                     breakpoints[i], values[i])) {
      xs_.pop_back();
      ys_.pop_back();
    }
    xs_.push_back(std::move(breakpoints[i]));
    ys_.push_back(std::move(values[i]));
  }
}

PLHomeo PLHomeo::identity(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw DomainError("identity needs lo < hi");
  return PLHomeo({lo, hi}, {lo, hi});
}

std::size_t PLHomeo::segment_of(const Rational& x) const {
  if (x < xs_.front() || xs_.back() < x)
    throw DomainError("point " + x.str() + " outside domain [" + xs_.front().str() + ", " +
                      xs_.back().str() + "]");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::distance(xs_.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, xs_.size() - 2);
}

Rational PLHomeo::operator()(const Rational& x) const {
  std::size_t i = segment_of(x);
  if (x == xs_[i]) return ys_[i];
  return ys_[i] + (x - xs_[i]) * (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

Rational PLHomeo::preimage(const Rational& y) const {
  if (y < ys_.front() || ys_.back() < y) throw DomainError("value outside range");
  auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
  std::size_t i = static_cast<std::size_t>(std::distance(ys_.begin(), it));
  i = i == 0 ? 0 : std::min(i - 1, ys_.size() - 2);
  if (y == ys_[i]) return xs_[i];
  return xs_[i] + (y - ys_[i]) * (xs_[i + 1] - xs_[i]) / (ys_[i + 1] - ys_[i]);
}

Rational PLHomeo::slope_left(const Rational& x) const {
  std::size_t i = segment_of(x);
  if (x == xs_[i] && i > 0) --i;
  return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

Rational PLHomeo::slope_right(const Rational& x) const {
  std::size_t i = segment_of(x);
  if (x == xs_[i + 1] && i + 2 < xs_.size()) ++i;
  return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

Rational evaluate(const PLHomeo& f, const Rational& x) { return f(x); }

PLHomeo compose(const PLHomeo& f, const PLHomeo& g) {
  require_same_domain(f, g, "compose");
  std::vector<Rational> pulled;
  pulled.reserve(f.size());
  for (const auto& b : f.breakpoints()) pulled.push_back(g.preimage(b));
  std::vector<Rational> xs = merged(g.breakpoints(), pulled);
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(f(g(x)));
  return PLHomeo(std::move(xs), std::move(ys));
}

PLHomeo invert(const PLHomeo& f) {
  std::vector<Rational> xs(f.values().begin(), f.values().end());
  std::vector<Rational> ys(f.breakpoints().begin(), f.breakpoints().end());
  return PLHomeo(std::move(xs), std::move(ys));
}

Rational iterate(const PLHomeo& f, Rational x, long n) {
  if (n >= 0) {
    for (long i = 0; i < n; ++i) x = f(x);
  } else {
    for (long i = 0; i < -n; ++i) x = f.preimage(x);
  }
  return x;
}

Rational c0_distance(const PLHomeo& f, const PLHomeo& g) {
  require_same_domain(f, g, "c0_distance");
  Rational best(0);
  for (const auto& x : merged(f.breakpoints(), g.breakpoints()))
    best = max(best, abs(f(x) - g(x)));
  for (const auto& y : merged(f.values(), g.values()))
    best = max(best, abs(f.preimage(y) - g.preimage(y)));
  return best;
}

std::vector<Interval> fixed_set(const PLHomeo& f) {
  auto xs = f.breakpoints();
  auto ys = f.values();
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational d = ys[i] - xs[i];
    if (d.is_zero()) pieces.push_back({xs[i], xs[i]});
    if (i + 1 == xs.size()) break;
    Rational e = ys[i + 1] - xs[i + 1];
    if (d.is_zero() && e.is_zero()) {
      pieces.push_back({xs[i], xs[i + 1]});
    } else if (d.sign() * e.sign() < 0) {
      Rational x = xs[i] + d * (xs[i + 1] - xs[i]) / (d - e);
      pieces.push_back({x, x});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& p : pieces) {
    if (!out.empty() && p.lo <= out.back().hi) {
      out.back().hi = max(out.back().hi, p.hi);
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<OrientedInterval> wandering_intervals(const PLHomeo& f) {
  auto fix = fixed_set(f);
  std::vector<OrientedInterval> out;
  for (std::size_t i = 0; i + 1 < fix.size(); ++i) {
    const Rational& a = fix[i].hi;
    const Rational& b = fix[i + 1].lo;
    Rational mid = (a + b) / Rational(2);
    out.push_back({a, b, f(mid) > mid ? Orientation::R : Orientation::L});
  }
  return out;
}

PLHomeo canonical_r(const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("canonical generator needs a < b");
  return PLHomeo({a, (a + b) / Rational(2), b}, {a, (a + Rational(3) * b) / Rational(4), b});
}

PLHomeo canonical_l(const Rational& a, const Rational& b) { return invert(canonical_r(a, b)); }

PLHomeo canonical(Orientation o, const Rational& a, const Rational& b) {
  return o == Orientation::R ? canonical_r(a, b) : canonical_l(a, b);
}

PLHomeo rescale(const PLHomeo& f, const Interval& target) {
  if (!(target.lo < target.hi)) throw DomainError("rescale needs a < b");
  Rational scale = target.length() / (f.hi() - f.lo());
  auto to_target = [&](const Rational& x) { return target.lo + (x - f.lo()) * scale; };
  std::vector<Rational> xs, ys;
  xs.reserve(f.size());
  ys.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    xs.push_back(to_target(f.breakpoints()[i]));
    ys.push_back(to_target(f.values()[i]));
  }
  return PLHomeo(std::move(xs), std::move(ys));
}

Rational max_slope(const PLHomeo& f) {
  auto xs = f.breakpoints();
  auto ys = f.values();
  Rational best(0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    best = max(best, (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
  return best;
}

Rational modulus_of_continuity(const PLHomeo& f, const Rational& alpha) {
  if (alpha.sign() <= 0) throw DomainError("modulus_of_continuity needs alpha > 0");
  return max_slope(f) * alpha;
}

PLHomeo splice(const PLHomeo& f, const PLHomeo& piece) {
  const Rational& wa = piece.lo();
  const Rational& wb = piece.hi();
  if (wa < f.lo() || f.hi() < wb) throw DomainError("splice window outside domain");
  if (f(wa) != wa || f(wb) != wb) throw DomainError("splice window ends must be fixed by f");
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.breakpoints()[i] < wa) {
      xs.push_back(f.breakpoints()[i]);
      ys.push_back(f.values()[i]);
    }
  }
  for (std::size_t i = 0; i < piece.size(); ++i) {
    xs.push_back(piece.breakpoints()[i]);
    ys.push_back(piece.values()[i]);
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (wb < f.breakpoints()[i]) {
      xs.push_back(f.breakpoints()[i]);
      ys.push_back(f.values()[i]);
    }
  }
  return PLHomeo(std::move(xs), std::move(ys));
}

PLHomeo restrict_to(const PLHomeo& f, const Interval& window) {
  if (f(window.lo) != window.lo || f(window.hi) != window.hi)
    throw DomainError("restriction window is not invariant");
  std::vector<Rational> xs{window.lo}, ys{window.lo};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& x = f.breakpoints()[i];
    if (window.lo < x && x < window.hi) {
      xs.push_back(x);
      ys.push_back(f.values()[i]);
    }
  }
  xs.push_back(window.hi);
  ys.push_back(window.hi);
  return PLHomeo(std::move(xs), std::move(ys));
}

}  // namespace continua
