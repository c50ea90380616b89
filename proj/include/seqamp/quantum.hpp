#pragma once

#include <vector>

#include "seqamp/amplitude.hpp"
#include "seqamp/linalg.hpp"
#include "seqamp/logic.hpp"

namespace seqamp {

// Unit vector of amplitudes relative to a reference measurement: component j
// is the amplitude for the reference measurement to yield atomic outcome j.
class StateVector {
 public:
  // Errors: NormalizationFailure (norm deviates from one by more than
  // kNormTol), InvalidArgument.
  StateVector(Vector components, MeasurementId reference);

  int dim() const { return static_cast<int>(components_.size()); }
  const Vector& components() const { return components_; }
  const MeasurementId& reference() const { return reference_; }
  Complex operator[](int i) const { return components_(i); }

 private:
  Vector components_;
  MeasurementId reference_;
};

// Unitary map between amplitude vectors relative to two reference
// measurements: column j holds the amplitudes, relative to `to`, of a system
// prepared in atomic outcome j of `from`.
class TransformationMatrix {
 public:
  // Errors: NotUnitary, InvalidArgument.
  TransformationMatrix(Matrix matrix, MeasurementId from, MeasurementId to);

  const Matrix& matrix() const { return matrix_; }
  const MeasurementId& from() const { return from_; }
  const MeasurementId& to() const { return to_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  MeasurementId from_;
  MeasurementId to_;
};

// The identity transformation of an atomic measurement onto itself, with all
// repeat phases fixed to zero.
//   Errors: InvalidArgument.
TransformationMatrix self_transformation(const Measurement& m);

// Unitary temporal evolution over a time interval, relative to one fixed
// reference measurement.
class EvolutionOperator {
 public:
  // Errors: NotUnitary, InvalidArgument (empty interval).
  EvolutionOperator(Matrix matrix, Real t_start, Real t_end);

  const Matrix& matrix() const { return matrix_; }
  Real t_start() const { return t_start_; }
  Real t_end() const { return t_end_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  Real t_start_;
  Real t_end_;
};

// Hermitian operator representing a measurement with real outcome values:
// matrix = sum_q value_q u_q u_q† over the orthonormal eigenstates u_q.
class MeasurementOperator {
 public:
  // Builds the operator from the states prepared by each outcome of the
  // measurement reached through t, paired with the given outcome values.
  //   Errors: DimensionMismatch.
  static MeasurementOperator from_prepared(const TransformationMatrix& t,
                                           const RealVector& values);

  // Recovers eigenvalues/eigenstates from a Hermitian matrix. Ordering is
  // deterministic: descending eigenvalue, ties broken by lexicographic
  // comparison of the gauge-fixed eigenvectors.
  //   Errors: InvalidArgument (matrix not Hermitian within kUnitaryTol).
  static MeasurementOperator from_matrix(const Matrix& hermitian,
                                         MeasurementId reference);

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const std::vector<StateVector>& eigenstates() const { return eigenstates_; }
  const Matrix& matrix() const { return matrix_; }
  const MeasurementId& reference() const { return reference_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  friend MeasurementOperator conjugate_operator(const MeasurementOperator&,
                                                const TransformationMatrix&);

 private:
  MeasurementOperator() = default;

  RealVector eigenvalues_;
  std::vector<StateVector> eigenstates_;
  Matrix matrix_;
  MeasurementId reference_;
};

// State of a system prepared by an atomic preparation event, expressed
// relative to `reference`, obtained from the model's transition matrix for
// the interaction between preparation and reference.
//   Errors: UnknownTransition, DimensionMismatch, InvalidArgument.
StateVector state_after_preparation(const AmplitudeModel& model,
                                    const Event& preparation,
                                    const InteractionId& interaction,
                                    const Measurement& reference);

// States prepared by each atomic outcome of the measurement reached through
// t, expressed relative to t.from(): the gauge-fixed conjugated rows of the
// transformation matrix. Orthonormal by unitarity.
std::vector<StateVector> prepared_states(const TransformationMatrix& t);

// Probability |u† v|^2 that a system in state v is found in state u.
//   Errors: ReferenceMismatch, DimensionMismatch.
Real born_probability(const StateVector& u, const StateVector& v);

// Expectation value v† N v (real for Hermitian N).
//   Errors: ReferenceMismatch, DimensionMismatch.
Real expectation(const MeasurementOperator& n, const StateVector& v);

// Re-expresses a state in another reference: for t mapping M' to M and v
// relative to M, returns v' = t.matrix()† v relative to M'.
//   Errors: ReferenceMismatch, DimensionMismatch.
StateVector change_representation(const StateVector& v,
                                  const TransformationMatrix& t);

// Conjugates n into the representation t.from(): matrix V† N V, eigenvalues
// unchanged, eigenstates mapped to V† u_q and re-gauged. Requires
// n.reference() == t.to().
//   Errors: ReferenceMismatch, DimensionMismatch.
MeasurementOperator conjugate_operator(const MeasurementOperator& n,
                                       const TransformationMatrix& t);

// Applies an evolution operator: same reference, components u.matrix() * v.
//   Errors: DimensionMismatch.
StateVector evolve(const StateVector& v, const EvolutionOperator& u);

// Chains two evolutions; requires b to start where a ends.
//   Errors: DimensionMismatch, TimeMismatch.
EvolutionOperator chain(const EvolutionOperator& a,
                        const EvolutionOperator& b);

// Joint state of two independently prepared systems: Kronecker product with
// row-major index flattening, reference compose_ids of the factors'. Factor
// references may share a label — they live on distinct systems.
StateVector compose_states(const StateVector& a, const StateVector& b);

}  // namespace seqamp
