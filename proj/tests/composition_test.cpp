#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "seqamp/composition.hpp"
#include "seqamp/generators.hpp"
#include "test_util.hpp"

using namespace seqamp;
using test::atom;
using test::kInvSqrt2;
using test::thrown_code;
using test::two_axis_model;

TEST_CASE("the composite amplitude is the product of the factors") {
  CHECK(composite_amplitude(Complex(1, 0), Complex(0.3, 0.4)) ==
        Complex(0.3, 0.4));
  CHECK(composite_amplitude(Complex(0, 0.5), Complex(0.5, 0)) ==
        Complex(0, 0.25));
}

TEST_CASE("the product candidate satisfies every composition axiom") {
  const BinaryCandidate product{"product",
                                [](Complex u, Complex v) { return u * v; }};
  const auto results = check_binary_axioms(product, 2000, 13);
  REQUIRE(results.size() == 4);
  for (const AxiomResult& r : results) {
    CAPTURE(to_string(r.axiom));
    CHECK(r.violation_count == 0);
    CHECK(r.max_residual <= 1e-12);
    CHECK(r.checked > 0);
  }
  CHECK_FALSE(check_fixed_point_constraint(product, 2000, 13).has_value());
}

TEST_CASE("conjugating candidates trip the fixed-point constraint at u = i") {
  const BinaryCandidate both{"conjugate-product", [](Complex u, Complex v) {
                               return std::conj(u) * std::conj(v);
                             }};
  const auto hit = check_fixed_point_constraint(both, 500, 13);
  REQUIRE(hit.has_value());
  CHECK(hit->axiom == Axiom::fixed_point);
  CHECK(hit->witness.front() == Complex(0, 1));  // first probe point
  CHECK(hit->residual == 2.0);                   // |conj(i) - i|

  const BinaryCandidate left{"left-conjugate-product",
                             [](Complex u, Complex v) {
                               return std::conj(u) * v;
                             }};
  const auto hit2 = check_fixed_point_constraint(left, 500, 13);
  REQUIRE(hit2.has_value());
  CHECK(hit2->witness.front() == Complex(0, 1));
  CHECK(hit2->residual == 2.0);
}

TEST_CASE("a vanishing candidate is inadmissible outright") {
  const BinaryCandidate zero{"zero", [](Complex, Complex) {
                               return Complex(0, 0);
                             }};
  CHECK(thrown_code([&] { check_fixed_point_constraint(zero, 100, 1); }) ==
        Errc::zero_candidate);
}

TEST_CASE("every alternative in the standard family fails somewhere") {
  for (const BinaryCandidate& candidate : standard_binary_candidates()) {
    CAPTURE(candidate.label);
    bool failed = false;
    try {
      for (const AxiomResult& r : check_binary_axioms(candidate, 3000, 99))
        if (!r.passed()) failed = true;
      if (check_fixed_point_constraint(candidate, 3000, 99).has_value())
        failed = true;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::zero_candidate);
      failed = true;
    }
    CHECK(failed == (candidate.label != "product"));
  }
}

TEST_CASE("identity and conjugation are the admissible unary maps") {
  const auto candidates = standard_unary_candidates();
  REQUIRE(candidates.size() == 4);
  for (const UnaryCandidate& candidate : candidates) {
    CAPTURE(candidate.label);
    const bool admissible =
        candidate.label == "identity" || candidate.label == "conjugation";
    bool failed = false;
    for (const AxiomResult& r : check_unary_pair(candidate, 2000, 5)) {
      if (!r.passed()) failed = true;
      CHECK(r.violations.size() <=
            static_cast<std::size_t>(kMaxWitnesses));
    }
    CHECK(failed == !admissible);
  }
}

TEST_CASE("the square fails additivity with a checkable witness") {
  const UnaryCandidate square{"square",
                              [](Complex z) { return z * z; }};
  bool additivity_failed = false;
  for (const AxiomResult& r : check_unary_pair(square, 2000, 5)) {
    if (r.axiom == Axiom::additivity) {
      additivity_failed = !r.passed();
      CHECK(r.violation_count > 0);
      REQUIRE_FALSE(r.violations.empty());
      const ViolationReport& w = r.violations.front();
      REQUIRE(w.witness.size() == 2);
      const Complex z1 = w.witness[0];
      const Complex z2 = w.witness[1];
      CHECK(std::abs((z1 + z2) * (z1 + z2) - (z1 * z1 + z2 * z2)) ==
            doctest::Approx(w.residual));
    } else {
      CHECK(r.passed());  // squaring is multiplicative
    }
  }
  CHECK(additivity_failed);

  // Tuples whose sum leaves the unit disk have no operational meaning and
  // are skipped, not silently checked.
  const auto results = check_unary_pair(square, 2000, 5);
  CHECK(results[0].skipped > 0);
  CHECK(results[0].checked + results[0].skipped == 2000);
}

TEST_CASE("composite sequences multiply their factor amplitudes") {
  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const AmplitudeModel pair = tensor_product(spin, spin);
  const Sequence left("S1", {atom(0, "L", 2, 0), atom(1, "Mid", 2, 1)},
                      {kIdentityInteraction});
  const Sequence right("S2", {atom(0, "L", 2, 1), atom(1, "Mid", 2, 0)},
                       {kIdentityInteraction});
  const Sequence joint = compose(left, right);
  CHECK(joint.events()[0].measurement == "L*L");
  const Amplitude product = composite_amplitude(amplitude(spin, left),
                                                amplitude(spin, right));
  CHECK(std::abs(amplitude(pair, joint) - product) <= 1e-12);

  // And over random noninteracting model pairs.
  Rng rng(61);
  const FrameModel fa = random_frame_model(rng, 2, 2, 1);
  const FrameModel fb = random_frame_model(rng, 3, 2, 1);
  const AmplitudeModel joint_model = tensor_product(fa.model, fb.model);
  for (int i = 0; i < 20; ++i) {
    const auto pick = [&](const FrameModel& fm, int dim) {
      std::vector<Event> events;
      for (int t = 0; t < 3; ++t) {
        const MeasurementId m = fm.pick_measurement(rng);
        const int outcome = rng.uniform_int(0, dim - 1);
        events.push_back(atom(t, m, dim, outcome));
      }
      return events;
    };
    const Sequence sa("S1", pick(fa, 2),
                      {kIdentityInteraction, kIdentityInteraction});
    const Sequence sb("S2", pick(fb, 3),
                      {kIdentityInteraction, kIdentityInteraction});
    const Amplitude expected = composite_amplitude(amplitude(fa.model, sa),
                                                   amplitude(fb.model, sb));
    CHECK(std::abs(amplitude(joint_model, compose(sa, sb)) - expected) <=
          1e-12);
  }
}
