#pragma once

#include <cstdint>
#include <vector>

#include "seqamp/action.hpp"
#include "seqamp/amplitude.hpp"
#include "seqamp/disturbance.hpp"
#include "seqamp/report.hpp"

namespace seqamp {

// Property suites behind the CLI commands and the acceptance gate. Each
// returns one CheckResult per property, aggregated over every sampled
// instance; `detail` records sample counts and worst witnesses.

// Structural identities of the sequence algebra, `tuples` random operand
// tuples each: commutativity and associativity of the parallel merge,
// associativity of the series join, both series-over-parallel distributive
// laws, associativity of composition, the series/composition interchange,
// both composition-over-parallel distributive laws, and inversion of a
// series join.
std::vector<CheckResult> logic_identity_suite(long tuples, std::uint64_t seed);

// Sum, product, probability and temporal-inversion rules plus outcome
// normalization, on random sequences over random models of dimensions
// 2, 3, 4 and 8.
std::vector<CheckResult> feynman_rule_suite(long sequences, std::uint64_t seed,
                                            Real tol = kProbabilityTol);

// Trivial-measurement insertions (every interior position, doubled up, and
// with a foreign measurement) leave quantum predictions unchanged across
// random frame models and layouts.
std::vector<CheckResult> no_disturbance_suite(int models, std::uint64_t seed,
                                              Real tol = kProbabilityTol);

// The classical account of the repeat-measurement layout: the closed-form
// repeat probability alpha^2 + (1-alpha)^2, its gap from one on (0, 1), and
// agreement of classical_prediction with the closed form on explicit
// two-outcome models (where the quantum prediction stays one).
std::vector<CheckResult> classical_disturbance_suite(
    int alphas, std::uint64_t seed, Real tol = kProbabilityTol);

// Reconstruction of the quantum formalism from random models: transition
// unitarity, repeatability of prepared states, Born normalization,
// representation-change invariance, composite tensor states, and one
// large-dimension smoke check.
std::vector<CheckResult> reconstruction_suite(int models, std::uint64_t seed,
                                              Real unitary_tol = kUnitaryTol,
                                              Real tol = kProbabilityTol);

// Composition-law audit: the product candidate passes every axiom and the
// fixed-point constraint; each alternative candidate fails somewhere (the
// conjugate one with its stored fixed-point witness, the zero one as
// inadmissible outright); the unary identity/conjugation pair passes the
// pair equations while square and modulus fail.
std::vector<CheckResult> composition_suite(long samples, std::uint64_t seed,
                                           Real tol = kProbabilityTol);

// Action functional and the phase rule: additivity and inversion on random
// discretized paths, phase-map homomorphism and conjugate-inversion, and the
// candidate-map audit.
std::vector<CheckResult> action_suite(long paths, std::uint64_t seed,
                                      Real tol = kProbabilityTol);

// Lattice sum-over-paths at the resonant time step: single-step kernel
// unitarity, entry moduli against the analytic free-particle kernel (free
// particle only; skipped otherwise), stepwise composition, and multi-step
// unitarity.
std::vector<CheckResult> lattice_suite(const ActionFunctional& l,
                                       const LatticeSpec& grid, int steps,
                                       const ActionScale& scale,
                                       Real tol = kProbabilityTol);

// Monte-Carlo estimate against the exact prediction on one layout: every
// frequency within three binomial standard errors, plus same-seed
// determinism.
std::vector<CheckResult> monte_carlo_suite(const AmplitudeModel& model,
                                           const Layout& layout, long runs,
                                           std::uint64_t seed);

}  // namespace seqamp
