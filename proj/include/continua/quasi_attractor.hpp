#pragma once

// Shadowing on the arc model: pseudo-orbits of Y homeomorphisms, inward
// neighbourhoods of arcs, per-arc quasi-attractor certificates and their
// combination into a single delta for the whole model.

#include "continua/continuum.hpp"
#include "continua/shadowing.hpp"

#include <map>

namespace continua {

using YOrbit = PseudoOrbit<YPoint>;

struct NoInwardStub : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoverFailure : std::runtime_error {
  CoverFailure(const std::string& what, std::vector<YPoint> points)
      : std::runtime_error(what), uncovered(std::move(points)) {}
  std::vector<YPoint> uncovered;
};

// One random step of plane size < delta: pick an arc within delta of p
// (p's own arc always qualifies), project onto it and slide along it with the
// remaining budget. Exact, clamped to the arc.
YPoint perturb(const YModel& model, const YPoint& p, const Rational& delta, std::mt19937_64& rng,
               const NoiseConfig& noise = {});

// Forward delta-pseudo-orbit x_0, ..., x_steps with x_{i+1} = perturb(g(x_i)).
YOrbit generate_y_pseudo_orbit(const YModel& model, const YHomeo& g, const Rational& delta,
                               unsigned steps, const YPoint& x0, std::uint64_t seed,
                               const NoiseConfig& noise = {});

// Exact max over i of |g(x_i) - x_{i+1}|^2.
Rational max_jump_squared(const YModel& model, const YHomeo& g, const YOrbit& orbit);

// V is the arc plus, on every other arc meeting it at a vertex, the
// half-open piece between that vertex and the cut point.
struct Stub {
  std::size_t arc = 0;
  std::size_t vertex = 0;
  bool at_start = true;  // piece is [0, cut) when true, (cut, 1] otherwise
  Rational cut;
};

struct Neighborhood {
  std::size_t arc = 0;
  std::vector<Stub> stubs;
};

bool in_neighborhood(const YModel& model, const Neighborhood& v, const YPoint& p);

// For each arc meeting `arc` at a vertex, cuts inside a wandering interval
// flowing toward that vertex, within plane distance alpha of it; among the
// qualifying intervals the farthest one is used, cut at its midpoint.
// Throws NoInwardStub when an adjacent arc has no such interval.
Neighborhood find_inward_neighborhood(const YModel& model, const YHomeo& g, std::size_t arc,
                                      const Rational& alpha);

// True when every stub cut moves strictly toward its vertex, which makes
// clos g(V) a subset of V.
bool image_closure_inside(const YHomeo& g, const Neighborhood& v);

// Exact squared plane distance between clos g(V) and the complement of V in
// the model; B_delta(clos g(V)) lies in V iff delta^2 <= this value. nullopt
// when the complement is empty.
std::optional<Rational> image_clearance_squared(const YModel& model, const YHomeo& g,
                                                const Neighborhood& v);

struct CertificateConfig {
  unsigned trials = 200;  // pseudo-orbits per level in the modulus estimate
  std::uint64_t seed = 1;
  ModulusConfig modulus;
  unsigned delta_levels = 48;  // candidate deltas eps / 2^k for k < delta_levels
  Rational kappa{3, 2};        // plane distance between points on two arcs at a vertex,
                               // bounded by kappa times the distance along them
};

struct QuasiAttractorCertificate {
  std::size_t arc = 0;
  Rational epsilon;
  Rational delta1;     // plane delta1-pseudo-orbits in the arc are eps/2-shadowed
  Rational alpha;
  Rational lipschitz;  // plane Lipschitz bound of g near the arc, kappa included
  Neighborhood V;
  Rational delta;
};

QuasiAttractorCertificate quasi_attractor_certificate(const YModel& model, const YHomeo& g,
                                                      std::size_t arc, const Rational& eps,
                                                      const CertificateConfig& config = {});

struct GlobalShadowing {
  Rational delta;
  std::vector<std::pair<std::size_t, Rational>> cover;  // (arc, delta_arc)
  std::vector<QuasiAttractorCertificate> certificates;
  std::map<std::size_t, std::string> failures;  // arcs without a certificate
};

// Certificates for every arc, then an exact check that every sample point of
// the model lies within delta_i of a certified arc i. Throws CoverFailure
// with the uncovered sample points.
GlobalShadowing global_shadowing_delta(const YModel& model, const YHomeo& g, const Rational& eps,
                                       const CertificateConfig& config = {});

// Projects the orbit onto the arc and searches the arc-level shadowing set
// with the tolerance left after the projection; the witness is checked
// exactly against the plane distance (strict < eps).
std::optional<YPoint> shadow_from_arc(const YModel& model, const YHomeo& g, std::size_t arc,
                                      const YOrbit& orbit, const Rational& eps);

// Tries every arc whose delta-ball contains x_0 (x_0's own arc first). With
// an empty cover every arc is tried, nearest first.
std::optional<YPoint> shadow_on_model(
    const YModel& model, const YHomeo& g, const YOrbit& orbit, const Rational& eps,
    const std::vector<std::pair<std::size_t, Rational>>& cover = {});

struct SamplingReport {
  unsigned orbits = 0;
  unsigned steps = 0;
  std::vector<unsigned> failed;  // trial indices without a shadowing point
  bool ok() const { return failed.empty(); }
};

// Per-arc soundness: `orbits` forward pseudo-orbits, trial i using
// certificate i mod k; each starts within that certificate's delta of its arc
// and must be eps-shadowed by a point of the same arc.
SamplingReport sample_certificates(const YModel& model, const YHomeo& g,
                                   const std::vector<QuasiAttractorCertificate>& certificates,
                                   unsigned orbits, unsigned steps, std::uint64_t seed);

// Whole-model soundness: `orbits` forward pseudo-orbits at the global delta
// from uniformly random starts, each required to have a shadowing point.
SamplingReport sample_global(const YModel& model, const YHomeo& g, const GlobalShadowing& global,
                             const Rational& eps, unsigned orbits, unsigned steps,
                             std::uint64_t seed);

}  // namespace continua
