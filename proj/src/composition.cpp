#include "seqamp/composition.hpp"

#include <algorithm>
#include <cmath>

#include "seqamp/errors.hpp"
#include "seqamp/random.hpp"

namespace seqamp {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::associativity: return "associativity";
    case Axiom::cross_multiplicativity: return "cross-multiplicativity";
    case Axiom::left_distributivity: return "left-distributivity";
    case Axiom::right_distributivity: return "right-distributivity";
    case Axiom::fixed_point: return "fixed-point";
    case Axiom::additivity: return "additivity";
    case Axiom::multiplicativity: return "multiplicativity";
    case Axiom::exponential: return "exponential";
    case Axiom::conjugate_inversion: return "conjugate-inversion";
    case Axiom::unit_modulus: return "unit-modulus";
  }
  return "unknown";
}

const char* formula(Axiom axiom) {
  switch (axiom) {
    case Axiom::associativity: return "F(a,F(b,c)) = F(F(a,b),c)";
    case Axiom::cross_multiplicativity: return "F(ab,cd) = F(a,c)F(b,d)";
    case Axiom::left_distributivity: return "F(a,b+c) = F(a,b)+F(a,c)";
    case Axiom::right_distributivity: return "F(a+b,c) = F(a,c)+F(b,c)";
    case Axiom::fixed_point: return "F(u,1) = F(F(u,1),1)";
    case Axiom::additivity: return "f(z1+z2) = f(z1)+f(z2)";
    case Axiom::multiplicativity: return "f(z1 z2) = f(z1)f(z2)";
    case Axiom::exponential: return "f(x+y) = f(x)f(y)";
    case Axiom::conjugate_inversion: return "f(-x) = conj(f(x))";
    case Axiom::unit_modulus: return "|f(x)| = 1";
  }
  return "unknown";
}

namespace {

void record(AxiomResult& result, Real residual,
            std::initializer_list<Complex> witness) {
  ++result.checked;
  result.max_residual = std::max(result.max_residual, residual);
  if (residual > kAxiomTol) {
    ++result.violation_count;
    if (static_cast<int>(result.violations.size()) < kMaxWitnesses)
      result.violations.push_back({result.axiom, witness, residual});
  }
}

bool in_disk(Complex z) { return std::abs(z) <= 1.0; }

}  // namespace

std::vector<AxiomResult> check_binary_axioms(const BinaryCandidate& f,
                                             long samples,
                                             std::uint64_t seed) {
  std::vector<AxiomResult> results{
      {Axiom::associativity, f.label, 0, 0, 0, 0, {}},
      {Axiom::cross_multiplicativity, f.label, 0, 0, 0, 0, {}},
      {Axiom::left_distributivity, f.label, 0, 0, 0, 0, {}},
      {Axiom::right_distributivity, f.label, 0, 0, 0, 0, {}},
  };
  AxiomResult& assoc = results[0];
  AxiomResult& cross = results[1];
  AxiomResult& left = results[2];
  AxiomResult& right = results[3];

  Rng rng(seed);
  for (long i = 0; i < samples; ++i) {
    const Complex a = rng.unit_disk();
    const Complex b = rng.unit_disk();
    const Complex c = rng.unit_disk();
    const Complex d = rng.unit_disk();

    record(assoc, std::abs(f.eval(a, f.eval(b, c)) - f.eval(f.eval(a, b), c)),
           {a, b, c});
    record(cross,
           std::abs(f.eval(a * b, c * d) - f.eval(a, c) * f.eval(b, d)),
           {a, b, c, d});
    // Sums outside the unit disk correspond to no parallel combination of
    // outcomes; such tuples are out of scope for the distributivity laws.
    if (in_disk(b + c))
      record(left, std::abs(f.eval(a, b + c) - (f.eval(a, b) + f.eval(a, c))),
             {a, b, c});
    else
      ++left.skipped;
    if (in_disk(a + b))
      record(right, std::abs(f.eval(a + b, c) - (f.eval(a, c) + f.eval(b, c))),
             {a, b, c});
    else
      ++right.skipped;
  }
  return results;
}

std::optional<ViolationReport> check_fixed_point_constraint(
    const BinaryCandidate& f, long samples, std::uint64_t seed) {
  const Complex one(1, 0);
  if (std::abs(f.eval(one, one)) <= kAxiomTol)
    fail(Errc::zero_candidate,
         "candidate '" + f.label + "' has F(1,1) = 0 and cannot normalize "
         "composites");
  std::optional<ViolationReport> worst;
  auto probe = [&](Complex u) {
    const Complex once = f.eval(u, one);
    const Real residual = std::abs(once - f.eval(once, one));
    if (residual > kAxiomTol && (!worst || residual > worst->residual))
      worst = ViolationReport{Axiom::fixed_point, {u}, residual};
  };
  probe(Complex(0, 1));
  probe(Complex(0, -1));
  probe(Complex(M_SQRT1_2, M_SQRT1_2));
  Rng rng(seed);
  for (long i = 0; i < samples; ++i) probe(rng.unit_disk());
  return worst;
}

std::vector<AxiomResult> check_unary_pair(const UnaryCandidate& f,
                                          long samples, std::uint64_t seed) {
  std::vector<AxiomResult> results{
      {Axiom::additivity, f.label, 0, 0, 0, 0, {}},
      {Axiom::multiplicativity, f.label, 0, 0, 0, 0, {}},
  };
  AxiomResult& add = results[0];
  AxiomResult& mul = results[1];

  Rng rng(seed);
  for (long i = 0; i < samples; ++i) {
    const Complex z1 = rng.unit_disk();
    const Complex z2 = rng.unit_disk();
    if (in_disk(z1 + z2))
      record(add, std::abs(f.eval(z1 + z2) - (f.eval(z1) + f.eval(z2))),
             {z1, z2});
    else
      ++add.skipped;
    record(mul, std::abs(f.eval(z1 * z2) - f.eval(z1) * f.eval(z2)),
           {z1, z2});
  }
  return results;
}

std::vector<BinaryCandidate> standard_binary_candidates() {
  return {
      {"product", [](Complex u, Complex v) { return u * v; }},
      {"conjugate-product",
       [](Complex u, Complex v) { return std::conj(u) * std::conj(v); }},
      {"left-conjugate-product",
       [](Complex u, Complex v) { return std::conj(u) * v; }},
      {"squared-product",
       [](Complex u, Complex v) { return (u * v) * (u * v); }},
      {"constant-one", [](Complex, Complex) { return Complex(1, 0); }},
      {"zero", [](Complex, Complex) { return Complex(0, 0); }},
  };
}

std::vector<UnaryCandidate> standard_unary_candidates() {
  return {
      {"identity", [](Complex z) { return z; }},
      {"conjugation", [](Complex z) { return std::conj(z); }},
      {"square", [](Complex z) { return z * z; }},
      {"modulus", [](Complex z) { return Complex(std::abs(z), 0); }},
  };
}

}  // namespace seqamp
