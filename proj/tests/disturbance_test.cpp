#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "seqamp/disturbance.hpp"
#include "seqamp/generators.hpp"
#include "test_util.hpp"

using namespace seqamp;
using test::atom;
using test::kInvSqrt2;
using test::thrown_code;
using test::two_axis_model;

TEST_CASE("the classical repeat probability is alpha^2 + (1-alpha)^2") {
  CHECK(repeatability_gap(0.5) == 0.5);  // closed form, exact
  CHECK(repeatability_gap(0.0) == 1.0);
  CHECK(repeatability_gap(1.0) == 1.0);
  CHECK(repeatability_gap(0.25) == 0.625);  // 0.0625 + 0.5625
  CHECK(thrown_code([] { repeatability_gap(-0.1); }) == Errc::out_of_range);
  CHECK(thrown_code([] { repeatability_gap(1.5); }) == Errc::out_of_range);

  // The classical account must lose repeatability everywhere inside (0,1),
  // worst at one half.
  Real lowest = 2;
  for (int i = 0; i <= 100; ++i)
    lowest = std::min(lowest, repeatability_gap(i / 100.0));
  CHECK(lowest == 0.5);
  for (int i = 1; i < 100; ++i) CHECK(repeatability_gap(i / 100.0) < 1.0);
}

TEST_CASE("trivial insertions leave quantum predictions unchanged") {
  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const Layout repeat{atom(0, "L", 2, 0), kIdentityInteraction, {},
                      Measurement("L", 2)};
  const ProbabilityTable bare = quantum_prediction(spin, repeat);
  CHECK(bare.value(IndexSet{0}) == doctest::Approx(1.0).epsilon(1e-12));

  const Layout with_mid =
      insert_trivial(repeat, 1, trivialize(spin.measurement("Mid")));
  CHECK(with_mid.chain.size() == 1);
  CHECK(with_mid.chain[0].measurement.is_trivial());
  CHECK(ProbabilityTable::max_deviation(
            bare, quantum_prediction(spin, with_mid)) <= 1e-12);

  // Doubling the insertion changes nothing either.
  const Layout doubled = insert_trivial(with_mid, 1);
  CHECK(doubled.chain.size() == 2);
  CHECK(ProbabilityTable::max_deviation(
            bare, quantum_prediction(spin, doubled)) <= 1e-12);

  CHECK(thrown_code([&] { insert_trivial(repeat, 0); }) ==
        Errc::invalid_position);
  CHECK(thrown_code([&] { insert_trivial(repeat, 2); }) ==
        Errc::invalid_position);
  CHECK(thrown_code([&] {
          insert_trivial(repeat, 1, Measurement("Mid", 2));
        }) == Errc::invalid_argument);  // not trivial
  CHECK(thrown_code([&] {
          insert_trivial(repeat, 1, trivialize(Measurement("X", 3)));
        }) == Errc::invalid_argument);  // wrong dimension
}

TEST_CASE("a classical account must disturb where the quantum one does not") {
  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const Layout repeat{atom(0, "L", 2, 0), kIdentityInteraction, {},
                      Measurement("L", 2)};
  const Layout layout =
      insert_trivial(repeat, 1, trivialize(spin.measurement("Mid")));

  const ProbabilityTable quantum = quantum_prediction(spin, layout);
  const ProbabilityTable classical = classical_prediction(spin, layout);
  CHECK(quantum.value(IndexSet{0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(classical.value(IndexSet{0}) - repeatability_gap(0.5)) <=
        1e-12);

  // Same story at a lopsided transition probability.
  const Real c = std::sqrt(0.3);
  const Real s = std::sqrt(1.0 - c * c);
  const AmplitudeModel tilted = two_axis_model(c, s);
  const Real alpha =
      std::norm(tilted.resolve("L", "Mid", kIdentityInteraction)(0, 0));
  const Layout tilted_layout = insert_trivial(
      Layout{atom(0, "L", 2, 0), kIdentityInteraction, {},
             Measurement("L", 2)},
      1, trivialize(tilted.measurement("Mid")));
  CHECK(std::abs(quantum_prediction(tilted, tilted_layout).value(IndexSet{0}) -
                 1.0) <= 1e-12);
  CHECK(std::abs(classical_prediction(tilted, tilted_layout)
                     .value(IndexSet{0}) -
                 repeatability_gap(alpha)) <= 1e-12);

  const DisturbanceReport report = analyze_disturbance(spin, repeat, 1);
  CHECK(report.max_quantum_deviation <= 1e-12);
}

TEST_CASE("insertions hold across chain positions of a frame model") {
  Rng rng(41);
  const FrameModel fm = random_frame_model(rng, 3, 3, 1);
  const Layout layout{
      atom(0, "M0", 3, 1),
      "g1",
      {{coarse_grain(fm.model.measurement("M1"), {IndexSet{0, 1}}),
        kIdentityInteraction}},
      fm.model.measurement("M2")};
  const ProbabilityTable bare = quantum_prediction(fm.model, layout);
  for (int pos = 1; pos <= 2; ++pos) {
    const DisturbanceReport r = analyze_disturbance(fm.model, layout, pos);
    CHECK(r.max_quantum_deviation <= 1e-12);
    CHECK(ProbabilityTable::max_deviation(r.baseline, bare) == 0);
  }
}

TEST_CASE("classical accounts demand symmetric transition probabilities") {
  AmplitudeModel cyc(3);
  cyc.add_measurement(Measurement("A", 3));
  cyc.add_measurement(Measurement("B", 3));
  Matrix shift = Matrix::Zero(3, 3);
  shift(0, 1) = Complex(1, 0);
  shift(1, 2) = Complex(1, 0);
  shift(2, 0) = Complex(1, 0);  // 3-cycle: |T|^2 is not symmetric
  cyc.add_transition("A", "B", kIdentityInteraction, shift);

  const Layout through{atom(0, "A", 3, 0),
                       kIdentityInteraction,
                       {{trivialize(cyc.measurement("B")),
                         kIdentityInteraction}},
                       cyc.measurement("A")};
  CHECK(thrown_code([&] { classical_prediction(cyc, through); }) ==
        Errc::asymmetric_transitions);

  // The quantum side has no such caveat.
  const Layout bare{atom(0, "A", 3, 0), kIdentityInteraction, {},
                    cyc.measurement("A")};
  CHECK(ProbabilityTable::max_deviation(quantum_prediction(cyc, bare),
                                        quantum_prediction(cyc, through)) <=
        1e-12);
}

TEST_CASE("Monte-Carlo estimates are reproducible and statistically sound") {
  const AmplitudeModel spin = two_axis_model(kInvSqrt2, kInvSqrt2);
  const Layout half{atom(0, "L", 2, 0), kIdentityInteraction, {},
                    Measurement("Mid", 2)};

  const ProbabilityTable single = monte_carlo(spin, half, 1, 99);
  CHECK(single.total() == 1.0);  // one run, one hot entry
  CHECK((single.value(IndexSet{0}) == 1.0 || single.value(IndexSet{1}) == 1.0));

  const ProbabilityTable a = monte_carlo(spin, half, 4096, 7);
  const ProbabilityTable b = monte_carlo(spin, half, 4096, 7);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    CHECK(a.entries[i].second == b.entries[i].second);  // bit-identical

  const ProbabilityTable exact = quantum_prediction(spin, half);
  const long runs = 100000;
  const ProbabilityTable estimate = monte_carlo(spin, half, runs, 20210711);
  for (const auto& [outcome, p] : exact.entries) {
    const Real se = std::sqrt(std::max(0.0, p * (1 - p)) / runs);
    CHECK(std::abs(estimate.value(outcome) - p) <= 3 * se + 1e-12);
  }

  // An interior collapse shows up in the sampled frequencies too.
  const Layout observed{atom(0, "L", 2, 0),
                        kIdentityInteraction,
                        {{spin.measurement("Mid"), kIdentityInteraction}},
                        Measurement("L", 2)};
  const ProbabilityTable scrambled = monte_carlo(spin, observed, runs, 3);
  CHECK(std::abs(scrambled.value(IndexSet{0}) - 0.5) <= 0.01);
}
