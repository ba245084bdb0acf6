#pragma once

// Piecewise-linear increasing homeomorphisms of a closed interval with exact
// rational breakpoints, plus fixed-set and wandering-interval analysis.

#include "continua/rational.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace continua {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Orientation : std::uint8_t { R, L };

inline Orientation opposite(Orientation o) {
  return o == Orientation::R ? Orientation::L : Orientation::R;
}
inline char to_char(Orientation o) { return o == Orientation::R ? 'R' : 'L'; }

// Wandering interval (a, b): both ends fixed, no fixed point inside.
// R means f(x) > x inside (orbits move right), L means f(x) < x.
struct OrientedInterval {
  Rational a;
  Rational b;
  Orientation orientation = Orientation::R;

  Rational length() const { return b - a; }
  friend bool operator==(const OrientedInterval&, const OrientedInterval&) = default;
};

class PLHomeo {
 public:
  // Validates strict monotonicity and endpoint fixing, then drops collinear
  // breakpoints so that equal maps compare equal.
  PLHomeo(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static PLHomeo identity(const Rational& lo, const Rational& hi);
  static PLHomeo identity(const Interval& d) { return identity(d.lo, d.hi); }

  const Rational& lo() const { return xs_.front(); }
  const Rational& hi() const { return xs_.back(); }
  Interval domain() const { return {lo(), hi()}; }
  std::span<const Rational> breakpoints() const { return xs_; }
  std::span<const Rational> values() const { return ys_; }
  std::size_t size() const { return xs_.size(); }
  bool is_identity() const { return xs_.size() == 2; }

  Rational operator()(const Rational& x) const;
  // Preimage of y; equivalent to invert(*this)(y) without building the inverse.
  Rational preimage(const Rational& y) const;

  // Slope of the segment containing x from the left / right.
  Rational slope_left(const Rational& x) const;
  Rational slope_right(const Rational& x) const;

  friend bool operator==(const PLHomeo&, const PLHomeo&) = default;

 private:
  PLHomeo() = default;
  std::size_t segment_of(const Rational& x) const;
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

Rational evaluate(const PLHomeo& f, const Rational& x);

// f ∘ g.
PLHomeo compose(const PLHomeo& f, const PLHomeo& g);
PLHomeo invert(const PLHomeo& f);

// n-fold application; negative n iterates the inverse.
Rational iterate(const PLHomeo& f, Rational x, long n);

// sup over x of |f(x) - g(x)| and |f^-1(x) - g^-1(x)|.
Rational c0_distance(const PLHomeo& f, const PLHomeo& g);

// Maximal closed intervals of fixed points, sorted; isolated fixed points are
// degenerate intervals. Always contains both domain endpoints.
std::vector<Interval> fixed_set(const PLHomeo& f);

std::vector<OrientedInterval> wandering_intervals(const PLHomeo& f);

// Breakpoints (a, (a+b)/2, b) with values (a, (a+3b)/4, b).
PLHomeo canonical_r(const Rational& a, const Rational& b);
// Inverse of canonical_r(a, b).
PLHomeo canonical_l(const Rational& a, const Rational& b);
PLHomeo canonical(Orientation o, const Rational& a, const Rational& b);

// Conjugates f by the increasing affine map from f's domain onto target.
PLHomeo rescale(const PLHomeo& f, const Interval& target);

Rational max_slope(const PLHomeo& f);
// Upper bound on |f(x) - f(y)| whenever |x - y| <= alpha.
Rational modulus_of_continuity(const PLHomeo& f, const Rational& alpha);

// Replaces f on window by piece (whose domain must equal window). The
// window must be a sub-interval where f is the identity or the endpoints of
// piece must agree with f; the result is validated as a homeomorphism.
PLHomeo splice(const PLHomeo& f, const PLHomeo& piece);

// Restriction of f to an invariant sub-interval [lo, hi] (both fixed by f).
PLHomeo restrict_to(const PLHomeo& f, const Interval& window);

}  // namespace continua
