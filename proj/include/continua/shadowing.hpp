#pragma once

// Pseudo-orbits of PL interval homeomorphisms, exact finite-window shadowing
// sets and an empirical shadowing modulus.

#include "continua/plmap.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace continua {

// Index range [first, last] of a finite two-sided window; [-m, n] in the
// usual notation.
struct Window {
  long first = 0;
  long last = 0;
  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
};

template <class Point>
struct PseudoOrbit {
  long first_index = 0;
  std::vector<Point> points;
  Rational delta;  // certified: every jump is strictly below delta

  long last_index() const { return first_index + static_cast<long>(points.size()) - 1; }
  const Point& at(long i) const { return points.at(static_cast<std::size_t>(i - first_index)); }
  Window window() const { return {first_index, last_index()}; }
};

using IntervalOrbit = PseudoOrbit<Rational>;

// Counter-based seed derivation (splitmix64 finaliser), so trial i always
// sees the same stream regardless of how trials are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

struct NoiseConfig {
  long denominator = 1024;  // noise is delta * u / denominator
};

// Uniform rational in (-bound, bound) with bounded denominator.
Rational rational_noise(std::mt19937_64& rng, const Rational& bound, const NoiseConfig& noise);

// x_{i+1} = clamp(f(x_i) + eta_i), eta_i uniform in (-delta, delta); backward
// steps use f^-1 with noise shrunk by the max slope of f so that the forward
// jump stays below delta. delta = 0 yields the true orbit.
IntervalOrbit generate_pseudo_orbit(const PLHomeo& f, const Rational& delta, Window window,
                                    const Rational& x0, std::uint64_t seed,
                                    const NoiseConfig& noise = {});

// max_i |f(x_i) - x_{i+1}|.
Rational verify_pseudo_orbit(const PLHomeo& f, const IntervalOrbit& orbit);

struct ShadowingSet {
  std::vector<Interval> intervals;
  Rational epsilon;
  bool empty() const { return intervals.empty(); }
};

// {y : |f^i(y) - x_i| <= eps for every i in the window}, exact. For monotone
// f this is a single closed interval or empty.
ShadowingSet shadowing_set(const PLHomeo& f, const IntervalOrbit& orbit, const Rational& eps);

struct ModulusConfig {
  Window window{0, 20};
  unsigned levels = 12;  // grid eps / 2^k for k < levels
  NoiseConfig noise;
};

// Largest grid value delta = eps / 2^k for which `trials` random
// delta-pseudo-orbits (uniform random start) all have a nonempty shadowing
// set at eps; 0 when no grid value passes. Trial t uses derive_seed(seed, t)
// at every level, so a trial only changes through delta.
Rational estimate_shadowing_modulus(const PLHomeo& f, const Rational& eps, unsigned trials,
                                    std::uint64_t seed, const ModulusConfig& config = {});

}  // namespace continua
