#pragma once

#include <Eigen/Dense>
#include <complex>

#include "seqamp/errors.hpp"

namespace seqamp {

using Real = double;
using Complex = std::complex<Real>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// An amplitude is an ordinary complex number; the name records intent where a
// plain Complex would be ambiguous (e.g. versus a matrix entry).
using Amplitude = Complex;

// Default numerical tolerances. Callers can override per call; these are the
// values used by validation on construction.
inline constexpr Real kUnitaryTol = 1e-10;
inline constexpr Real kNormTol = 1e-9;
inline constexpr Real kProbabilityTol = 1e-12;
inline constexpr Real kGaugeEps = 1e-12;

// Max-norm of A†A - I; zero iff A is unitary.
template <typename Derived>
Real unitarity_defect(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto n = a.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g =
      a.adjoint() * a -
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
  return g.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& a, Real tol = kUnitaryTol) {
  return a.rows() == a.cols() && unitarity_defect(a) <= tol;
}

// Max-norm of A - A†.
template <typename Derived>
Real hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d = a - a.adjoint();
  return d.cwiseAbs().maxCoeff();
}

// Largest entrywise absolute difference between two equally sized arrays.
template <typename DerivedA, typename DerivedB>
Real max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(Errc::dimension_mismatch, "max_abs_diff on unequal shapes");
  return (a - b).cwiseAbs().maxCoeff();
}

// Kronecker product with row-major pair ordering: entry ((i1,i2),(j1,j2)) of
// the result sits at (i1*rows(b)+i2, j1*cols(b)+j2).
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b.template cast<Complex>();
  return out;
}

// Rescales v by a unit phase so its first component of magnitude above
// kGaugeEps becomes real and positive. Fixes the arbitrary overall phase of
// eigenvectors and prepared states deterministically.
inline Vector canonical_gauge(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Real m = std::abs(v(i));
    if (m > kGaugeEps) {
      v *= std::conj(v(i)) / m;
      break;
    }
  }
  return v;
}

}  // namespace seqamp
