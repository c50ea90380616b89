#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "seqamp/linalg.hpp"
#include "seqamp/logic.hpp"

namespace seqamp {

// Key of an explicitly stored transition: measurement performed before,
// measurement performed after, and the interaction acting in between.
struct TransitionKey {
  MeasurementId from;
  MeasurementId to;
  InteractionId interaction;

  friend auto operator<=>(const TransitionKey&, const TransitionKey&) =
      default;
};

// Unitary transition data for one system: a set of atomic measurements of a
// common dimension, same-measurement evolution matrices per interaction id,
// and cross-measurement transition matrices. Matrix convention: column j of
// resolve(from, to, g) is the amplitude vector over `to`-outcomes given that
// the `from`-measurement yielded outcome j.
class AmplitudeModel {
 public:
  explicit AmplitudeModel(int dim, bool validate = true);

  int dim() const { return dim_; }
  bool validating() const { return validate_; }

  // Measurements must be atomic (models describe the maximal resolution;
  // coarse outcomes arise in sequences, not in the model).
  void add_measurement(Measurement m);
  // Evolution matrix of interaction `id` expressed in any single
  // measurement's outcome basis (applies between equal measurement ids).
  void add_interaction(InteractionId id, Matrix u);
  // Transition matrix for the given interaction from one measurement to
  // another (ids may be equal, which overrides the interaction fallback).
  void add_transition(MeasurementId from, MeasurementId to, InteractionId g,
                      Matrix t);

  bool has_measurement(const MeasurementId& id) const;
  const Measurement& measurement(const MeasurementId& id) const;
  std::vector<MeasurementId> measurement_ids() const;
  const std::map<InteractionId, Matrix>& interactions() const {
    return interactions_;
  }
  const std::map<TransitionKey, Matrix>& transitions() const {
    return transitions_;
  }

  // Transition matrix between two measurements under an interaction, found
  // in this order:
  //   1. an explicitly stored matrix for (from, to, g);
  //   2. if g is an inverse id "~h": the adjoint of resolve(to, from, h);
  //   3. if from == to: the stored evolution matrix of g, or the identity
  //      matrix when g is the identity interaction;
  //   4. if g is the identity interaction: the adjoint of a stored
  //      (to, from, identity) matrix (an instantaneous basis change is
  //      direction-symmetric).
  //   Errors: UnknownTransition.
  const Matrix& resolve(const MeasurementId& from, const MeasurementId& to,
                        const InteractionId& g) const;

 private:
  const Matrix& check_unitary(const Matrix& m, const std::string& what) const;
  const Matrix& cache(TransitionKey key, Matrix value) const;

  int dim_;
  bool validate_;
  std::map<MeasurementId, Measurement> measurements_;
  std::map<InteractionId, Matrix> interactions_;
  std::map<TransitionKey, Matrix> transitions_;
  mutable std::map<TransitionKey, Matrix> derived_;  // resolve() fallbacks
  mutable Matrix identity_;
};

// Amplitude of a sequence under a model: the product rule along intervals
// combined with the sum rule over the atomic outcomes inside coarse-grained
// interior events. Computed by masked matrix-vector propagation.
//   Errors: UnknownTransition, DimensionMismatch.
Amplitude amplitude(const AmplitudeModel& model, const Sequence& s);

// |amplitude|^2.
Real probability(const AmplitudeModel& model, const Sequence& s);

// Amplitude of the temporal inverse of s, via invert(). Equals the complex
// conjugate of amplitude(model, s).
Amplitude amplitude_of_inverse(const AmplitudeModel& model, const Sequence& s);

// Probabilities of the blocks of one measurement's partition, summing to one.
struct ProbabilityTable {
  MeasurementId measurement;
  std::vector<std::pair<IndexSet, Real>> entries;

  Real total() const;
  Real value(const IndexSet& outcome) const;  // Errors: OutOfRange

  // Largest per-outcome probability difference. Tables must address the same
  // measurement with identical outcome sets.
  //   Errors: ReferenceMismatch.
  static Real max_deviation(const ProbabilityTable& a,
                            const ProbabilityTable& b);
};

// One step of a measurement chain: the measurement performed, then the
// interaction acting until the next step.
struct ChainStep {
  Measurement measurement;
  InteractionId next_interaction;
};

// Outcome distribution of the final measurement given an atomic preparation
// event, an interaction to the first chain step, intermediate (possibly
// coarse-grained or trivial) measurements, and a final measurement. Coarse
// interior outcomes are marginalized by summing probabilities over the
// blocks of each chain partition, with amplitudes summed inside each block.
//   Errors: UnknownTransition, DimensionMismatch.
ProbabilityTable outcome_distribution(const AmplitudeModel& model,
                                      const Event& preparation,
                                      const InteractionId& first_interaction,
                                      const std::vector<ChainStep>& chain,
                                      const Measurement& final_measurement);

// Same with the interval after the preparation left implicit (identity
// interaction, i.e. an immediate first chain measurement).
ProbabilityTable outcome_distribution(const AmplitudeModel& model,
                                      const Event& preparation,
                                      const std::vector<ChainStep>& chain,
                                      const Measurement& final_measurement);

// Model of the joint system of two models: measurements, interactions and
// transitions are Kronecker products of the factors', with ids composed by
// compose_ids(). Every pairing of the factors' stored transitions is formed,
// treating the identity interaction as available between equal measurements.
//   Errors: ResourceLimit (joint dimension above kMaxAtomicOutcomes).
AmplitudeModel tensor_product(const AmplitudeModel& a, const AmplitudeModel& b);

}  // namespace seqamp
