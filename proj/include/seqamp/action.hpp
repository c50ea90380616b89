#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqamp/composition.hpp"
#include "seqamp/linalg.hpp"

namespace seqamp {

// Discretized configuration-space trajectory: positions sampled at strictly
// increasing times. `orientation` records the traversal direction: +1 walks
// the samples forward in time, -1 walks them backward (every segment then
// contributes with reversed time order, which negates the action). Stored
// times stay increasing either way.
struct PathSpec {
  RealVector positions;
  RealVector times;
  int orientation = +1;

  // Errors: DegenerateSegment (times not strictly increasing),
  // InvalidArgument (length mismatch, fewer than two samples, orientation
  // not +-1).
  PathSpec(RealVector positions, RealVector times, int orientation = +1);

  int segments() const { return static_cast<int>(times.size()) - 1; }

  friend bool operator==(const PathSpec& a, const PathSpec& b);
};

// Time-reversed path: positions reversed, times mirrored about zero
// (t -> -t), traversal direction flipped. Involutive to the bit: negation is
// exact, so every segment duration survives the round trip unchanged.
PathSpec invert(const PathSpec& path);

// Joins two paths at a shared endpoint sample (same position, time and
// orientation).
//   Errors: MismatchedJunction.
PathSpec concatenate(const PathSpec& a, const PathSpec& b);

enum class Lagrangian {
  free_particle,  // L = m v^2 / 2
  harmonic,       // L = m v^2 / 2 - m w^2 x^2 / 2
};

// Classical action functional with a per-segment discretization rule:
// velocity = dx/dt on the segment, potential evaluated at the midpoint.
struct ActionFunctional {
  Lagrangian lagrangian = Lagrangian::free_particle;
  Real mass = 1;
  Real omega = 0;

  // Errors: DegenerateSegment (dt <= 0), InvalidArgument (mass <= 0).
  Real segment_action(Real x0, Real x1, Real dt) const;
};

// Action of a discretized path: the oriented sum of segment contributions.
// Additive under concatenation and negated under invert(), exact up to
// floating-point summation order.
//   Errors: as segment_action.
Real action(const PathSpec& path, const ActionFunctional& l);

// Scale constant multiplying the action in the amplitude phase; plays the
// role of one over the quantum of action. Must be positive.
struct ActionScale {
  Real alpha = 1;
};

// The amplitude assigned to a near-classical path: e^{i alpha S}. Unit
// modulus, additive-to-multiplicative, conjugated under action inversion.
//   Errors: InvalidArgument (alpha <= 0, non-finite S).
Complex amplitude_from_action(Real s, const ActionScale& scale);

// A candidate map from action values to amplitudes.
struct AmplitudeMapCandidate {
  std::string label;
  std::function<Complex(Real)> eval;
};

// Samples three constraints on an amplitude map over x, y in [-4, 4]:
// exponential f(x+y) = f(x)f(y), conjugate-inversion f(-x) = conj(f(x)), and
// unit modulus |f(x)| = 1 (the constant-modulus factor of f must be one).
// Returns every violation up to kMaxWitnesses per constraint; an empty list
// is a pass.
std::vector<ViolationReport> check_candidate_amplitude_map(
    const AmplitudeMapCandidate& f, long samples, std::uint64_t seed,
    Real tol = kAxiomTol);

// Candidate maps exercised by the audit: e^{ix} and e^{2ix} (admissible for
// any positive scale), e^{x+ix} (growing modulus; rejected), cos(x)
// (rejected).
std::vector<AmplitudeMapCandidate> standard_amplitude_maps();

// Uniform spatial lattice x_j = j * spacing, j = 0 .. points-1.
struct LatticeSpec {
  int points = 0;
  Real spacing = 1;
};

inline constexpr int kMaxLatticePoints = 256;
inline constexpr int kMaxLatticeSteps = 128;

// Single-step amplitude kernel on the lattice: entry (k, j) is
// e^{i alpha S(x_j -> x_k, dt)} with rows scaled to unit norm, so one step
// of the sum-over-paths is one matrix application.
//   Errors: ResourceLimit (points > kMaxLatticePoints), InvalidArgument,
//   DegenerateSegment.
Matrix lattice_step_kernel(const ActionFunctional& l, const LatticeSpec& grid,
                           Real dt, const ActionScale& scale);

// steps-fold product of the single-step kernel: the lattice sum over all
// piecewise paths with the given number of steps.
//   Errors: ResourceLimit (steps > kMaxLatticeSteps or grid too large).
Matrix lattice_propagator(const ActionFunctional& l, const LatticeSpec& grid,
                          int steps, Real dt, const ActionScale& scale);

// The time step at which the row-normalized free-particle kernel is exactly
// unitary: alpha * m * spacing^2 * points / (2 pi), i.e. the step phase
// alpha m a^2/(2 dt) equals pi/points.
Real resonant_time_step(const ActionFunctional& l, const LatticeSpec& grid,
                        const ActionScale& scale);

// Modulus of the analytic free-particle kernel over a time interval:
// sqrt(m alpha / (2 pi T)), constant in both endpoints (per unit length;
// multiply by the lattice spacing to compare with kernel entries).
Real analytic_free_kernel_modulus(Real mass, Real total_time,
                                  const ActionScale& scale);

}  // namespace seqamp
