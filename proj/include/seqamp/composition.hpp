#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seqamp/linalg.hpp"

namespace seqamp {

// Functional constraints a candidate composition or amplitude map must
// satisfy. The first seven address binary candidates F(u, v) for the
// amplitude of a composite in terms of its factors; the last three address
// scalar maps (unary maps of one amplitude, or maps from action values to
// amplitudes).
enum class Axiom {
  associativity,          // F(a, F(b, c)) == F(F(a, b), c)
  cross_multiplicativity, // F(ab, cd) == F(a, c) F(b, d)
  left_distributivity,    // F(a, b + c) == F(a, b) + F(a, c)
  right_distributivity,   // F(a + b, c) == F(a, c) + F(b, c)
  fixed_point,            // F(u, 1) == F(F(u, 1), 1)
  additivity,             // f(z1 + z2) == f(z1) + f(z2)
  multiplicativity,       // f(z1 z2) == f(z1) f(z2)
  exponential,            // f(x + y) == f(x) f(y)
  conjugate_inversion,    // f(-x) == conj(f(x))
  unit_modulus,           // |f(x)| == 1
};

const char* to_string(Axiom axiom);
const char* formula(Axiom axiom);

// Residuals above this are counted as violations.
inline constexpr Real kAxiomTol = 1e-9;
// At most this many concrete witnesses are kept per axiom.
inline constexpr int kMaxWitnesses = 8;

struct BinaryCandidate {
  std::string label;
  std::function<Complex(Complex, Complex)> eval;
};

struct UnaryCandidate {
  std::string label;
  std::function<Complex(Complex)> eval;
};

// A concrete input tuple on which an axiom fails, with the residual.
struct ViolationReport {
  Axiom axiom;
  std::vector<Complex> witness;
  Real residual = 0;
};

// Outcome of sampling one axiom for one candidate. Tuples whose intermediate
// sums leave the unit disk have no operational counterpart and are skipped
// rather than checked; the skip count is reported. Every violating sample is
// counted; the first kMaxWitnesses concrete witnesses are stored.
struct AxiomResult {
  Axiom axiom;
  std::string candidate;
  long checked = 0;
  long skipped = 0;
  long violation_count = 0;
  Real max_residual = 0;
  std::vector<ViolationReport> violations;

  bool passed(Real tol = kAxiomTol) const { return max_residual <= tol; }
};

// Samples the four binary axioms (associativity, cross-multiplicativity and
// both distributivities) with arguments uniform on the unit disk.
std::vector<AxiomResult> check_binary_axioms(const BinaryCandidate& f,
                                             long samples, std::uint64_t seed);

// Checks the fixed-point constraint F(u, 1) == F(F(u, 1), 1) on a few fixed
// probe points (i, -i, (1+i)/sqrt(2)) followed by random unit-disk samples;
// returns the maximum-residual violation, or nothing on a pass. A candidate
// with F(1, 1) = 0 cannot normalize composites at all and is rejected
// outright.
//   Errors: ZeroCandidate.
std::optional<ViolationReport> check_fixed_point_constraint(
    const BinaryCandidate& f, long samples, std::uint64_t seed);

// Samples the additivity + multiplicativity pair for a unary map on the
// unit disk.
std::vector<AxiomResult> check_unary_pair(const UnaryCandidate& f,
                                          long samples, std::uint64_t seed);

// The one admissible composition law: the product of the factor amplitudes.
inline Complex composite_amplitude(Complex a, Complex b) { return a * b; }

// Candidate laws exercised by the audit: the product and instructive
// failures (conjugated factors, one factor conjugated, squared product,
// constants).
std::vector<BinaryCandidate> standard_binary_candidates();

// Unary candidates for the additivity + multiplicativity pair: identity and
// conjugation (the admissible pair), square and modulus (failures).
std::vector<UnaryCandidate> standard_unary_candidates();

}  // namespace seqamp
