#pragma once

#include <vector>

#include "seqamp/amplitude.hpp"
#include "seqamp/disturbance.hpp"
#include "seqamp/random.hpp"

namespace seqamp {

// Random partition of {0, ..., atomic_count-1} into `blocks` nonempty blocks.
std::vector<IndexSet> random_partition(Rng& rng, int atomic_count, int blocks);

// Random nonempty subset of {0, ..., atomic_count-1} with `size` elements.
IndexSet random_subset(Rng& rng, int atomic_count, int size);

// A model whose transition matrices all derive from one unitary frame B per
// measurement and one unitary W per interaction:
//   T(M -> N, g) = B_N^dagger W_g B_M        (W_identity = 1).
// Transitions of this form chain consistently through any intermediate
// measurement -- the frames telescope -- which is what makes an inserted
// trivial measurement leave every prediction unchanged.
struct FrameModel {
  AmplitudeModel model;
  std::vector<MeasurementId> measurements;  // "M0", "M1", ...; all atomic
  std::vector<InteractionId> interactions;  // "g1", ...; identity not listed
  std::vector<Matrix> frames;               // B per measurement; B_0 = 1
  std::vector<Matrix> evolutions;           // W per interaction

  const MeasurementId& pick_measurement(Rng& rng) const;
};

// Draws the frames and evolutions Haar-uniformly and stores the transition
// matrix of every ordered measurement pair under the identity and under each
// interaction (the implicit repeat identity excepted).
FrameModel random_frame_model(Rng& rng, int dim, int n_measurements,
                              int n_interactions);

// Interaction id for a random interval: mostly one of the model's
// interactions, sometimes the identity or a formal inverse "~g".
InteractionId random_interaction(Rng& rng, const FrameModel& fm);

// Random sequence over the model's measurements at consecutive integer times
// starting at t0: atomic endpoints, interior outcomes random nonempty subsets
// (singletons when coarse_interior is false).
Sequence random_sequence(Rng& rng, const FrameModel& fm, int n_events,
                         bool coarse_interior = true, int t0 = 0);

// Random chain layout: atomic preparation, n_interior intermediate
// measurements with random coarse-grainings, atomic final measurement.
Layout random_layout(Rng& rng, const FrameModel& fm, int n_interior);

}  // namespace seqamp
