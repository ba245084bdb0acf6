#pragma once

// Brute-force reference computations. Kept independent of the production
// code paths they check: only plmap primitives and plain enumeration.

#include "continua/plmap.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace continua::oracle {

// Exhaustive depth-first search over alternating R/L subsequences of the
// wandering intervals, starting with R. Returns the minimum over admissible
// chains of max(a_1 - lo, hi - b_n, gaps); branches are cut only when their
// partial cost already reaches the best complete chain.
inline std::optional<Rational> exhaustive_threshold(const std::vector<OrientedInterval>& w,
                                                    const Interval& domain) {
  std::optional<Rational> best;
  std::function<void(std::size_t, const Rational&, Orientation)> extend =
      [&](std::size_t last, const Rational& cost, Orientation next) {
        if (w[last].b < domain.hi) {
          Rational total = max(cost, domain.hi - w[last].b);
          if (!best || total < *best) best = total;
        }
        for (std::size_t j = last + 1; j < w.size(); ++j) {
          if (w[j].orientation != next || !(w[last].b < w[j].a)) continue;
          Rational c = max(cost, w[j].a - w[last].b);
          if (best && *best <= c) continue;
          extend(j, c, opposite(next));
        }
      };
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].orientation != Orientation::R || !(domain.lo < w[i].a)) continue;
    Rational c = w[i].a - domain.lo;
    if (best && *best <= c) continue;
    extend(i, c, Orientation::L);
  }
  return best;
}

// Whether some alternating chain certifies P_eps, by plain enumeration of
// every alternating subsequence (no pruning beyond the eps bound itself).
inline bool exhaustive_has_witness(const std::vector<OrientedInterval>& w, const Interval& domain,
                                   const Rational& eps) {
  std::function<bool(std::size_t, Orientation)> extend = [&](std::size_t last,
                                                             Orientation next) {
    if (w[last].b < domain.hi && domain.hi - w[last].b < eps) return true;
    for (std::size_t j = last + 1; j < w.size(); ++j) {
      if (w[j].orientation != next || !(w[last].b < w[j].a)) continue;
      if (!(w[j].a - w[last].b < eps)) continue;
      if (extend(j, opposite(next))) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].orientation != Orientation::R) continue;
    if (!(domain.lo < w[i].a) || !(w[i].a - domain.lo < eps)) continue;
    if (extend(i, Orientation::L)) return true;
  }
  return false;
}

// All J(n,k) with n <= depth that are not contained in a shallower J(m,j):
// the ternary gaps on which f* is defined by its smallest level.
inline std::vector<std::pair<Interval, unsigned>> enumerate_gaps(unsigned depth) {
  std::vector<std::pair<Interval, unsigned>> all;
  long three_n = 1;
  for (unsigned n = 0; n <= depth; ++n, three_n *= 3) {
    long den = three_n * 3;
    for (long k = 0; k < three_n; ++k) {
      Interval j{Rational(3 * k + 1, den), Rational(3 * k + 2, den)};
      bool nested = false;
      for (const auto& [other, level] : all)
        if (other.lo <= j.lo && j.hi <= other.hi) nested = true;
      if (!nested) all.emplace_back(j, n);
    }
  }
  return all;
}

// Grid brute force of {y : |f^i(y) - x_i| <= eps for all i in the window}.
inline bool grid_member(const PLHomeo& f, const Rational& y, long first,
                        const std::vector<Rational>& points, const Rational& eps) {
  Rational z = y;
  for (long i = 0; i > first; --i) z = f.preimage(z);
  for (const auto& x : points) {
    if (abs(z - x) > eps) return false;
    z = f(z);
  }
  return true;
}

}  // namespace continua::oracle
