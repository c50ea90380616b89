#pragma once

#include <cstdint>

#include "seqamp/amplitude.hpp"

namespace seqamp {

// Experimental layout: an atomic preparation, a chain of intermediate
// measurements (possibly coarse-grained or fully trivial), and a final
// measurement whose outcome distribution is the quantity of interest.
// Measurement positions are numbered 0 (preparation) through
// chain.size() + 1 (final).
struct Layout {
  Event preparation;
  InteractionId first_interaction;
  std::vector<ChainStep> chain;
  Measurement final_measurement;

  int measurement_count() const {
    return static_cast<int>(chain.size()) + 2;
  }
};

// Inserts a trivial measurement immediately before position `position`
// (1 <= position <= chain.size() + 1), connected to the following
// measurement by a zero-duration identity interaction. By default the
// inserted measurement is the trivialized copy of the one currently at that
// position; the overload takes any trivial measurement explicitly.
//   Errors: InvalidPosition, InvalidArgument (explicit measurement not
//   trivial or of the wrong dimension).
Layout insert_trivial(const Layout& layout, int position);
Layout insert_trivial(const Layout& layout, int position,
                      const Measurement& trivial);

// Final-outcome distribution with interior outcomes marginalized by the sum
// rule over amplitudes inside each partition block (see
// outcome_distribution).
ProbabilityTable quantum_prediction(const AmplitudeModel& model,
                                    const Layout& layout);

// The prediction of a classical (ignorance) account of the same layout:
// outcomes are chained through every intermediate measurement with the
// transition probabilities |T_kj|^2, whether or not the intermediate result
// is recorded. For layouts that repeat the preparation measurement at the
// end, the transition-probability matrices in play must be symmetric
// (|T_kj|^2 == |T_jk|^2 within kNormTol).
//   Errors: AsymmetricTransitions.
ProbabilityTable classical_prediction(const AmplitudeModel& model,
                                      const Layout& layout);

// Classical probability of re-obtaining an initial two-valued outcome when a
// trivialized intermediate measurement with transition probability alpha is
// chained in between: alpha^2 + (1-alpha)^2. The quantum prediction is one;
// the shortfall 2*alpha*(1-alpha) is the disturbance a classical account
// necessarily ascribes to the trivial measurement.
//   Errors: OutOfRange (alpha outside [0, 1]).
Real repeatability_gap(Real alpha);

// Samples the layout run by run: interior outcomes are drawn from the block
// probabilities and the state is masked and renormalized accordingly;
// returns the empirical final-outcome frequencies. Deterministic per seed.
ProbabilityTable monte_carlo(const AmplitudeModel& model, const Layout& layout,
                             long runs, std::uint64_t seed);

// Side-by-side effect of one trivial-measurement insertion: the quantum
// prediction without and with the insertion, and the classical prediction
// with it. max_quantum_deviation compares the two quantum tables;
// max_classical_deviation compares the classical tables with and without the
// insertion, isolating what the classical account ascribes to the trivial
// measurement alone.
struct DisturbanceReport {
  ProbabilityTable baseline;
  ProbabilityTable with_trivial;
  ProbabilityTable classical;
  Real max_quantum_deviation = 0;
  Real max_classical_deviation = 0;
};

DisturbanceReport analyze_disturbance(const AmplitudeModel& model,
                                      const Layout& layout, int position);

}  // namespace seqamp
