#pragma once

// Ternary gap combinatorics: depth-truncated generic homeomorphism, the
// alternating-chain property P_eps, greedy conjugacy matching and fixed-point
// explosions.

#include "continua/plmap.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace continua {

struct InsufficientIntervals : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInFixedSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Level n, position k with 0 <= k < 3^n.
struct TernaryIndex {
  unsigned n = 0;
  unsigned long long k = 0;
  friend bool operator==(const TernaryIndex&, const TernaryIndex&) = default;
};

// [(3k+1)/3^(n+1), (3k+2)/3^(n+1)].
Interval j_interval(const TernaryIndex& idx);

// True when no base-3 digit of k equals 1, i.e. J(n,k) is a gap of the
// middle-thirds Cantor set rather than a subset of a shallower gap.
bool is_cantor_gap(const TernaryIndex& idx);

// Cantor gaps J(n,k) with n <= depth, sorted left to right.
std::vector<TernaryIndex> cantor_gaps(unsigned depth);
// Cantor gaps at exactly level n, sorted left to right (2^n of them).
std::vector<TernaryIndex> cantor_gaps_at(unsigned n);

// R on even levels, L on odd levels.
inline Orientation level_orientation(unsigned n) {
  return n % 2 == 0 ? Orientation::R : Orientation::L;
}

// f*_N: canonical generators on every Cantor gap of level <= N, identity
// elsewhere on [0, 1].
PLHomeo build_f_star(unsigned depth);

// f*_N together with the outermost gaps J(n, 0) and J(n, 3^n - 1) for
// depth < n <= edge_depth, so that wandering intervals reach close to both
// endpoints.
PLHomeo build_f_star_edges(unsigned depth, unsigned edge_depth);

struct PWitness {
  std::vector<OrientedInterval> intervals;
  Rational epsilon;
};

// Smallest bound the chain certifies: max of a_1, 1 - b_n and every gap.
// Chains with a_1 = 0 or b_n = 1 are not admissible and throw.
Rational chain_cost(const std::vector<OrientedInterval>& chain, const Interval& domain);

// True when chain alternates R, L, R, ... starting with R and is strictly
// ordered inside the open domain.
bool is_admissible_chain(const std::vector<OrientedInterval>& chain, const Interval& domain);

// Left-to-right scan over wandering intervals. Each interval is reachable
// when it can open the chain (orientation R, 0 < a < eps) or extend a
// reachable interval of the opposite orientation with gap < eps; the
// latest-ending reachable predecessor is kept. Linear in the interval count.
std::optional<PWitness> check_P_eps(const PLHomeo& f, const Rational& eps);

// Bottleneck value: the infimum eps for which P_eps holds, i.e. the minimum
// of chain_cost over admissible chains of f*_N. Throws for depth > max_depth.
Rational p_eps_threshold(unsigned depth, unsigned max_depth = 6);
// Same quantity for an arbitrary map on [0, 1]; nullopt when no chain exists.
std::optional<Rational> p_eps_threshold_of(const PLHomeo& f);

struct MatchedPair {
  OrientedInterval source;
  TernaryIndex target;
};

struct ConjugacyReport {
  PLHomeo h;
  unsigned depth = 0;
  std::vector<MatchedPair> matched;  // sorted left to right
  Rational residual;
};

struct ConjugacyOptions {
  // Fundamental-domain propagation stops once both tails are shorter than
  // this fraction of their interval.
  Rational tail_fraction = pow2_inv(24);
  unsigned max_steps = 400;
};

// Inductive matching: round 1 takes the largest R-interval of g for J(0,0);
// round k takes, inside every gap left so far, the largest interval of
// orientation level_orientation(k-1) (leftmost on ties) for the matching
// level-(k-1) Cantor gap. On every pair h conjugates g to the canonical
// generator by propagating an affine fundamental domain; elsewhere h
// interpolates linearly. residual = c0_distance(h∘g, f*_(depth-1)∘h).
ConjugacyReport build_conjugacy(const PLHomeo& g, unsigned depth,
                                const ConjugacyOptions& options = {});

// Conjugacy between g on source and f on target, both without interior fixed
// points and with the same orientation; returned as a homeomorphism from
// source onto target sampled at its breakpoints (x, h(x)).
std::vector<std::pair<Rational, Rational>> interval_conjugacy(const PLHomeo& g,
                                                              const OrientedInterval& source,
                                                              const PLHomeo& f,
                                                              const OrientedInterval& target,
                                                              const ConjugacyOptions& options);

// Replaces f on [p - delta, p + delta] by the canonical generator of the given
// orientation. The window must lie in a single fixed-set component.
PLHomeo explode_fixed_point(const PLHomeo& f, const Rational& p, const Rational& delta,
                            Orientation orient);

// Returns f unchanged when it already satisfies P_eps; otherwise flattens f
// toward the identity where it moves points by less than a small eta, then
// plants alternating canonical intervals in every fixed component so that the
// result satisfies P_eps with c0_distance(f, result) < eps.
PLHomeo densify_to_P_eps(const PLHomeo& f, const Rational& eps);

// Vertical shrink of f toward the identity: x + sign(d) * max(|d| - eta, 0)
// with d = f(x) - x.
PLHomeo shrink_toward_identity(const PLHomeo& f, const Rational& eta);

}  // namespace continua
