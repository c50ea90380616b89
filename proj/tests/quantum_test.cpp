#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "seqamp/composition.hpp"
#include "seqamp/generators.hpp"
#include "seqamp/quantum.hpp"
#include "seqamp/random.hpp"
#include "test_util.hpp"

using namespace seqamp;
using test::atom;
using test::kInvSqrt2;
using test::thrown_code;
using test::two_axis_model;

TEST_CASE("preparation states are transition-matrix columns") {
  AmplitudeModel plain(3);
  plain.add_measurement(Measurement("M", 3));
  const StateVector e1 = state_after_preparation(
      plain, atom(0, "M", 3, 1), kIdentityInteraction, plain.measurement("M"));
  CHECK(e1.reference() == "M");
  CHECK(e1[1] == Complex(1, 0));
  CHECK(e1[0] == Complex(0, 0));

  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const StateVector balanced = state_after_preparation(
      spin, atom(0, "L", 2, 0), kIdentityInteraction,
      spin.measurement("Mid"));
  CHECK(std::norm(balanced[0]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::norm(balanced[1]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(balanced.components().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prepared states are normalized for any preparation") {
  Rng rng(11);
  const FrameModel fm = random_frame_model(rng, 4, 3, 2);
  for (int i = 0; i < 25; ++i) {
    const MeasurementId from = fm.pick_measurement(rng);
    const MeasurementId to = fm.pick_measurement(rng);
    const int q = rng.uniform_int(0, 3);
    const StateVector v =
        state_after_preparation(fm.model, atom(0, from, 4, q),
                                kIdentityInteraction, fm.model.measurement(to));
    CHECK(std::abs(v.components().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("prepared states repeat their outcome and are orthonormal") {
  const TransformationMatrix plain(Matrix::Identity(3, 3), "A", "B");
  const auto basis = prepared_states(plain);
  REQUIRE(basis.size() == 3);
  CHECK(basis[1][1] == Complex(1, 0));
  CHECK(basis[1].reference() == "A");

  Rng rng(5);
  const Matrix u = random_unitary(4, rng);
  const TransformationMatrix t(u, "From", "To");
  const auto states = prepared_states(t);
  for (int q = 0; q < 4; ++q) {
    const Vector through = u * states[q].components();
    for (int k = 0; k < 4; ++k) {
      const Real expected = q == k ? 1.0 : 0.0;
      CHECK(std::abs(std::norm(through(k)) - expected) <= 1e-12);
    }
  }
  Matrix gram(4, 4);
  for (int q = 0; q < 4; ++q)
    for (int k = 0; k < 4; ++k)
      gram(q, k) = states[q].components().dot(states[k].components());
  CHECK(max_abs_diff(gram, Matrix(Matrix::Identity(4, 4))) <= 1e-10);
}

TEST_CASE("Born probabilities are squared overlaps") {
  const StateVector u(Vector::Unit(2, 0), "L");
  const StateVector v(Vector::Unit(2, 0), "L");
  const StateVector w(Vector::Unit(2, 1), "L");
  CHECK(born_probability(u, v) == 1.0);
  CHECK(born_probability(u, w) == 0.0);
  CHECK(thrown_code([&] {
          born_probability(u, StateVector(Vector::Unit(2, 0), "M"));
        }) == Errc::reference_mismatch);

  // |u_k^dagger v|^2 equals the transition route |(T v)_k|^2.
  Rng rng(3);
  const Matrix m = random_unitary(3, rng);
  const TransformationMatrix t(m, "A", "B");
  const StateVector state(random_state(3, rng), "A");
  const auto basis = prepared_states(t);
  const Vector through = m * state.components();
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(born_probability(basis[k], state) -
                   std::norm(through(k))) <= 1e-12);
}

TEST_CASE("representation changes are unitary relabelings") {
  Rng rng(17);
  const Matrix m = random_unitary(3, rng);
  const TransformationMatrix t(m, "Aprime", "A");
  const StateVector v(random_state(3, rng), "A");

  const TransformationMatrix same(Matrix::Identity(3, 3), "A", "A");
  CHECK(max_abs_diff(change_representation(v, same).components(),
                     v.components()) == 0);

  const StateVector vp = change_representation(v, t);
  CHECK(vp.reference() == "Aprime");
  const TransformationMatrix back(m.adjoint(), "A", "Aprime");
  CHECK(max_abs_diff(change_representation(vp, back).components(),
                     v.components()) <= 1e-12);

  // Born probabilities do not depend on the representation.
  const StateVector u(random_state(3, rng), "A");
  const Real before = born_probability(u, v);
  const Real after = born_probability(change_representation(u, t),
                                      change_representation(v, t));
  CHECK(std::abs(after - before) <= 1e-12);
}

TEST_CASE("measurement operators diagonalize and conjugate unitarily") {
  const TransformationMatrix plain(Matrix::Identity(3, 3), "M", "M");
  RealVector values(3);
  values << 2.0, -1.0, 0.5;
  const MeasurementOperator n = MeasurementOperator::from_prepared(plain,
                                                                   values);
  Matrix diagonal = Matrix::Zero(3, 3);
  diagonal.diagonal() = values.cast<Complex>();
  CHECK(max_abs_diff(n.matrix(), diagonal) == 0);
  CHECK(expectation(n, StateVector(Vector::Unit(3, 0), "M")) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Recovery from the matrix sorts eigenvalues descending.
  const MeasurementOperator round = MeasurementOperator::from_matrix(
      n.matrix(), "M");
  RealVector sorted(3);
  sorted << 2.0, 0.5, -1.0;
  CHECK(max_abs_diff(round.eigenvalues(), sorted) <= 1e-12);

  Matrix skew(2, 2);
  skew << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK(thrown_code([&] { MeasurementOperator::from_matrix(skew, "M"); }) ==
        Errc::invalid_argument);

  // Conjugation into another representation keeps the eigenvalue list in
  // its stored order and preserves every expectation value.
  Rng rng(23);
  const TransformationMatrix view(random_unitary(3, rng), "Mprime", "M");
  const MeasurementOperator moved = conjugate_operator(n, view);
  CHECK(moved.reference() == "Mprime");
  CHECK(max_abs_diff(moved.eigenvalues(), n.eigenvalues()) == 0);
  CHECK(hermiticity_defect(moved.matrix()) <= 1e-12);
  const StateVector state(random_state(3, rng), "M");
  CHECK(std::abs(expectation(moved, change_representation(state, view)) -
                 expectation(n, state)) <= 1e-12);
}

TEST_CASE("evolution operators act unitarily and chain in time") {
  Rng rng(29);
  const Matrix u = random_unitary(2, rng);
  const EvolutionOperator step(u, 0.0, 1.0);
  const StateVector v(random_state(2, rng), "L");
  const StateVector moved = evolve(v, step);
  CHECK(std::abs(moved.components().norm() - 1.0) <= 1e-12);

  const EvolutionOperator back(u.adjoint(), 1.0, 2.0);
  CHECK(max_abs_diff(evolve(moved, back).components(), v.components()) <=
        1e-12);

  const EvolutionOperator both = chain(step, back);
  CHECK(both.t_start() == 0.0);
  CHECK(both.t_end() == 2.0);
  CHECK(max_abs_diff(both.matrix(), Matrix(Matrix::Identity(2, 2))) <= 1e-12);
  CHECK(thrown_code([&] { chain(back, step); }) == Errc::time_mismatch);

  const EvolutionOperator still(Matrix::Identity(2, 2), 0.0, 1.0);
  CHECK(max_abs_diff(evolve(v, still).components(), v.components()) == 0);
}

TEST_CASE("repeating a measurement is the identity with zero phases") {
  const Measurement m("M", 3);
  const TransformationMatrix t = self_transformation(m);
  CHECK(t.from() == "M");
  CHECK(t.to() == "M");
  CHECK(max_abs_diff(t.matrix(), Matrix(Matrix::Identity(3, 3))) == 0);

  // Alternative repeat phases e^{i phi_k} are invisible to Born squares.
  Rng rng(31);
  const StateVector v(random_state(3, rng), "M");
  Matrix phased = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) phased(k, k) = rng.unit_phase();
  const auto tilted = prepared_states(TransformationMatrix(phased, "M", "M"));
  const auto plain = prepared_states(t);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(born_probability(tilted[k], v) -
                   born_probability(plain[k], v)) <= 1e-12);
}

TEST_CASE("composite states are Kronecker products of their factors") {
  const StateVector e0(Vector::Unit(2, 0), "L");
  const StateVector joint = compose_states(e0, e0);
  CHECK(joint.dim() == 4);
  CHECK(joint.reference() == "L*L");
  CHECK(joint[0] == Complex(1, 0));

  Rng rng(37);
  const StateVector a(random_state(2, rng), "A");
  const StateVector b(random_state(3, rng), "B");
  const StateVector ab = compose_states(a, b);
  CHECK(ab.reference() == "A*B");
  CHECK(std::abs(ab.components().norm() - 1.0) <= 1e-12);
  // Row-major flattening follows the composite product law.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(ab[i * 3 + j] == composite_amplitude(a[i], b[j]));

  // The model route agrees: preparing the joint system gives the product.
  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const AmplitudeModel pair = tensor_product(spin, spin);
  const StateVector left = state_after_preparation(
      spin, atom(0, "L", 2, 0), kIdentityInteraction,
      spin.measurement("Mid"));
  const StateVector right = state_after_preparation(
      spin, atom(0, "L", 2, 1), kIdentityInteraction,
      spin.measurement("Mid"));
  const StateVector both = state_after_preparation(
      pair, atom(0, "L*L", 4, 0 * 2 + 1),
      compose_ids(kIdentityInteraction, kIdentityInteraction),
      pair.measurement("Mid*Mid"));
  CHECK(max_abs_diff(both.components(),
                     compose_states(left, right).components()) <= 1e-12);
}

TEST_CASE("states and transformations validate on construction") {
  CHECK(thrown_code([] { StateVector(Vector::Ones(2), "L"); }) ==
        Errc::normalization_failure);
  Matrix shear(2, 2);
  shear << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  CHECK(thrown_code([&] { TransformationMatrix(shear, "A", "B"); }) ==
        Errc::not_unitary);
}
