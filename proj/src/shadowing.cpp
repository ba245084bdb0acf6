#include "continua/shadowing.hpp"

#include <optional>

namespace continua {
namespace {

Rational clamp_to(const Rational& x, const PLHomeo& f) {
  if (x < f.lo()) return f.lo();
  if (f.hi() < x) return f.hi();
  return x;
}

Rational uniform_point(std::mt19937_64& rng, const Interval& d, long den) {
  std::uniform_int_distribution<long> u(0, den);
  return d.lo + d.length() * Rational(u(rng), den);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rational rational_noise(std::mt19937_64& rng, const Rational& bound, const NoiseConfig& noise) {
  const long d = noise.denominator;
  std::uniform_int_distribution<long> u(1, 2 * d - 1);
  return bound * Rational(u(rng) - d, d);
}

IntervalOrbit generate_pseudo_orbit(const PLHomeo& f, const Rational& delta, Window window,
                                    const Rational& x0, std::uint64_t seed,
                                    const NoiseConfig& noise) {
  if (delta.sign() < 0) throw DomainError("pseudo-orbit needs delta >= 0");
  if (!f.domain().contains(x0)) throw DomainError("start point outside domain");
  if (window.first > 0 || window.last < 0) throw DomainError("window must contain index 0");
  std::mt19937_64 rng(seed);
  const bool noisy = delta.sign() > 0;
  const Rational back_bound = noisy ? delta / max_slope(f) : Rational(0);

  std::vector<Rational> backward;
  Rational x = x0;
  for (long i = 0; i > window.first; --i) {
    Rational eta = noisy ? rational_noise(rng, back_bound, noise) : Rational(0);
    x = clamp_to(f.preimage(x) + eta, f);
    backward.push_back(x);
  }
  IntervalOrbit orbit{window.first, {}, delta};
  orbit.points.reserve(window.size());
  orbit.points.assign(backward.rbegin(), backward.rend());
  orbit.points.push_back(x0);
  x = x0;
  for (long i = 0; i < window.last; ++i) {
    Rational eta = noisy ? rational_noise(rng, delta, noise) : Rational(0);
    x = clamp_to(f(x) + eta, f);
    orbit.points.push_back(x);
  }
  return orbit;
}

Rational verify_pseudo_orbit(const PLHomeo& f, const IntervalOrbit& orbit) {
  if (orbit.points.empty()) throw DomainError("empty pseudo-orbit");
  Rational worst(0);
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i)
    worst = max(worst, abs(f(orbit.points[i]) - orbit.points[i + 1]));
  return worst;
}

ShadowingSet shadowing_set(const PLHomeo& f, const IntervalOrbit& orbit, const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("shadowing_set needs eps > 0");
  if (orbit.points.empty()) throw DomainError("empty pseudo-orbit");
  auto ball = [&](const Rational& x) -> std::optional<Interval> {
    Rational lo = max(x - eps, f.lo());
    Rational hi = min(x + eps, f.hi());
    if (hi < lo) return std::nullopt;
    return Interval{lo, hi};
  };
  // Walk backwards: T_i = B_i ∩ f^-1(T_{i+1}).
  std::optional<Interval> t = ball(orbit.points.back());
  for (std::size_t i = orbit.points.size() - 1; t && i-- > 0;) {
    auto b = ball(orbit.points[i]);
    if (!b) return {{}, eps};
    Interval pre{f.preimage(t->lo), f.preimage(t->hi)};
    Rational lo = max(pre.lo, b->lo);
    Rational hi = min(pre.hi, b->hi);
    if (hi < lo) return {{}, eps};
    t = Interval{lo, hi};
  }
  if (!t) return {{}, eps};
  // t holds positions at index first_index; move them to index 0.
  Interval at_zero{iterate(f, t->lo, -orbit.first_index), iterate(f, t->hi, -orbit.first_index)};
  return {{at_zero}, eps};
}

Rational estimate_shadowing_modulus(const PLHomeo& f, const Rational& eps, unsigned trials,
                                    std::uint64_t seed, const ModulusConfig& config) {
  if (eps.sign() <= 0) throw DomainError("modulus needs eps > 0");
  if (trials == 0) throw DomainError("modulus needs at least one trial");
  for (unsigned k = 0; k < config.levels; ++k) {
    const Rational delta = eps * pow2_inv(k);
    bool all = true;
    for (unsigned t = 0; t < trials && all; ++t) {
      std::mt19937_64 rng(derive_seed(seed, t));
      Rational x0 = uniform_point(rng, f.domain(), 1 << 16);
      auto orbit = generate_pseudo_orbit(f, delta, config.window, x0, rng(), config.noise);
      all = !shadowing_set(f, orbit, eps).empty();
    }
    if (all) return delta;
  }
  return Rational(0);
}

}  // namespace continua
