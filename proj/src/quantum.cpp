#include "seqamp/quantum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace seqamp {

namespace {

void check_same_dim(int a, int b, const char* what) {
  if (a != b)
    fail(Errc::dimension_mismatch,
         std::string(what) + ": dimensions " + std::to_string(a) + " and " +
             std::to_string(b) + " differ");
}

void check_same_reference(const MeasurementId& a, const MeasurementId& b,
                          const char* what) {
  if (a != b)
    fail(Errc::reference_mismatch,
         std::string(what) + ": references '" + a + "' and '" + b +
             "' differ");
}

// Lexicographic order on (re, im) component pairs; used only to break
// eigenvalue ties deterministically.
bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

StateVector::StateVector(Vector components, MeasurementId reference)
    : components_(std::move(components)), reference_(std::move(reference)) {
  if (reference_.empty())
    fail(Errc::invalid_argument, "empty reference measurement id");
  if (components_.size() < 2)
    fail(Errc::invalid_argument, "state needs at least two components");
  const Real norm = components_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "state norm " << norm << " deviates from one by more than "
       << kNormTol;
    fail(Errc::normalization_failure, os.str());
  }
}

TransformationMatrix::TransformationMatrix(Matrix matrix, MeasurementId from,
                                           MeasurementId to)
    : matrix_(std::move(matrix)), from_(std::move(from)), to_(std::move(to)) {
  if (from_.empty() || to_.empty())
    fail(Errc::invalid_argument, "empty measurement id in transformation");
  if (!is_unitary(matrix_)) {
    std::ostringstream os;
    os << "transformation '" << from_ << "' -> '" << to_
       << "' is not unitary (defect " << unitarity_defect(matrix_) << ")";
    fail(Errc::not_unitary, os.str());
  }
}

TransformationMatrix self_transformation(const Measurement& m) {
  if (!m.is_atomic())
    fail(Errc::invalid_argument,
         "self transformation is defined for atomic measurements");
  return TransformationMatrix(
      Matrix::Identity(m.atomic_count(), m.atomic_count()), m.id(), m.id());
}

EvolutionOperator::EvolutionOperator(Matrix matrix, Real t_start, Real t_end)
    : matrix_(std::move(matrix)), t_start_(t_start), t_end_(t_end) {
  if (!(t_end_ > t_start_))
    fail(Errc::invalid_argument, "evolution interval must have t_end > t_start");
  if (!is_unitary(matrix_)) {
    std::ostringstream os;
    os << "evolution operator is not unitary (defect "
       << unitarity_defect(matrix_) << ")";
    fail(Errc::not_unitary, os.str());
  }
}

MeasurementOperator MeasurementOperator::from_prepared(
    const TransformationMatrix& t, const RealVector& values) {
  check_same_dim(t.dim(), static_cast<int>(values.size()),
                 "operator from prepared states");
  MeasurementOperator op;
  op.reference_ = t.from();
  op.eigenvalues_ = values;
  op.matrix_ = Matrix::Zero(t.dim(), t.dim());
  for (int q = 0; q < t.dim(); ++q) {
    const Vector u = canonical_gauge(t.matrix().row(q).adjoint());
    op.matrix_ += values(q) * (u * u.adjoint());
    op.eigenstates_.emplace_back(u, t.from());
  }
  return op;
}

MeasurementOperator MeasurementOperator::from_matrix(const Matrix& hermitian,
                                                     MeasurementId reference) {
  if (hermitian.rows() != hermitian.cols())
    fail(Errc::invalid_argument, "operator matrix must be square");
  if (hermiticity_defect(hermitian) > kUnitaryTol)
    fail(Errc::invalid_argument, "operator matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success)
    fail(Errc::invalid_argument, "eigendecomposition failed");

  const int n = static_cast<int>(hermitian.rows());
  std::vector<Vector> gauged(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gauged[static_cast<std::size_t>(i)] =
        canonical_gauge(solver.eigenvectors().col(i));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Real va = solver.eigenvalues()(a);
    const Real vb = solver.eigenvalues()(b);
    if (std::abs(va - vb) > kNormTol) return va > vb;
    return lex_less(gauged[static_cast<std::size_t>(a)],
                    gauged[static_cast<std::size_t>(b)]);
  });

  MeasurementOperator op;
  op.reference_ = std::move(reference);
  op.matrix_ = hermitian;
  op.eigenvalues_ = RealVector(n);
  for (int i = 0; i < n; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    op.eigenvalues_(i) = solver.eigenvalues()(src);
    op.eigenstates_.emplace_back(gauged[static_cast<std::size_t>(src)],
                                 op.reference_);
  }
  return op;
}

StateVector state_after_preparation(const AmplitudeModel& model,
                                    const Event& preparation,
                                    const InteractionId& interaction,
                                    const Measurement& reference) {
  if (!preparation.atomic())
    fail(Errc::invalid_argument, "preparation outcome must be atomic");
  check_same_dim(preparation.atomic_count, model.dim(), "preparation");
  check_same_dim(reference.atomic_count(), model.dim(), "reference");
  const Matrix& t =
      model.resolve(preparation.measurement, reference.id(), interaction);
  return StateVector(t.col(preparation.outcome.front()), reference.id());
}

std::vector<StateVector> prepared_states(const TransformationMatrix& t) {
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(t.dim()));
  for (int q = 0; q < t.dim(); ++q)
    states.emplace_back(canonical_gauge(t.matrix().row(q).adjoint()),
                        t.from());
  return states;
}

Real born_probability(const StateVector& u, const StateVector& v) {
  check_same_reference(u.reference(), v.reference(), "Born probability");
  check_same_dim(u.dim(), v.dim(), "Born probability");
  return std::norm(u.components().dot(v.components()));
}

Real expectation(const MeasurementOperator& n, const StateVector& v) {
  check_same_reference(n.reference(), v.reference(), "expectation");
  check_same_dim(n.dim(), v.dim(), "expectation");
  return (v.components().adjoint() * n.matrix() * v.components())(0).real();
}

StateVector change_representation(const StateVector& v,
                                  const TransformationMatrix& t) {
  check_same_reference(t.to(), v.reference(), "representation change");
  check_same_dim(t.dim(), v.dim(), "representation change");
  return StateVector(t.matrix().adjoint() * v.components(), t.from());
}

MeasurementOperator conjugate_operator(const MeasurementOperator& n,
                                       const TransformationMatrix& t) {
  check_same_reference(t.to(), n.reference(), "operator conjugation");
  check_same_dim(t.dim(), n.dim(), "operator conjugation");
  MeasurementOperator out;
  out.reference_ = t.from();
  out.eigenvalues_ = n.eigenvalues();
  out.matrix_ = t.matrix().adjoint() * n.matrix() * t.matrix();
  for (const StateVector& u : n.eigenstates())
    out.eigenstates_.emplace_back(
        canonical_gauge(t.matrix().adjoint() * u.components()), t.from());
  return out;
}

StateVector evolve(const StateVector& v, const EvolutionOperator& u) {
  check_same_dim(u.dim(), v.dim(), "evolution");
  return StateVector(u.matrix() * v.components(), v.reference());
}

EvolutionOperator chain(const EvolutionOperator& a,
                        const EvolutionOperator& b) {
  check_same_dim(a.dim(), b.dim(), "evolution chain");
  if (b.t_start() != a.t_end())
    fail(Errc::time_mismatch,
         "second evolution must start where the first ends");
  return EvolutionOperator(b.matrix() * a.matrix(), a.t_start(), b.t_end());
}

StateVector compose_states(const StateVector& a, const StateVector& b) {
  return StateVector(kron(a.components(), b.components()),
                     compose_ids(a.reference(), b.reference()));
}

}  // namespace seqamp
