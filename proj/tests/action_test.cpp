#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <set>

#include "seqamp/action.hpp"
#include "test_util.hpp"

using namespace seqamp;
using test::thrown_code;

namespace {

PathSpec make_path(std::initializer_list<Real> xs,
                   std::initializer_list<Real> ts, int orientation = +1) {
  RealVector x(static_cast<int>(xs.size()));
  RealVector t(static_cast<int>(ts.size()));
  int i = 0;
  for (Real v : xs) x(i++) = v;
  i = 0;
  for (Real v : ts) t(i++) = v;
  return PathSpec(std::move(x), std::move(t), orientation);
}

}  // namespace

TEST_CASE("path specs validate their shape") {
  CHECK(make_path({0, 1}, {0, 1}).segments() == 1);
  CHECK(thrown_code([] { make_path({0, 1, 2}, {0, 1}); }) ==
        Errc::invalid_argument);
  CHECK(thrown_code([] { make_path({0}, {0}); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { make_path({0, 1}, {1, 1}); }) ==
        Errc::degenerate_segment);
  CHECK(thrown_code([] { make_path({0, 1}, {0, 1}, 2); }) ==
        Errc::invalid_argument);
}

TEST_CASE("actions take frozen values on hand-computed segments") {
  const ActionFunctional free_particle{Lagrangian::free_particle, 2.0, 0.0};
  // m (dx)^2 / (2 dt) with m = 2, dx = 1, dt = 1/2.
  CHECK(free_particle.segment_action(0.0, 1.0, 0.5) == 2.0);
  CHECK(action(make_path({0, 1}, {0, 0.5}), free_particle) == 2.0);

  // Midpoint potential: kinetic 2 minus 0.5 * m * w^2 * xmid^2 * dt = 1/8.
  const ActionFunctional harmonic{Lagrangian::harmonic, 2.0, 1.0};
  CHECK(harmonic.segment_action(0.0, 1.0, 0.5) == 1.875);

  // A constant free path carries zero action and unit amplitude.
  const PathSpec still = make_path({1.5, 1.5, 1.5}, {0, 1, 2});
  CHECK(action(still, free_particle) == 0.0);
  CHECK(amplitude_from_action(0.0, ActionScale{1.0}) == Complex(1, 0));

  CHECK(thrown_code([&] { free_particle.segment_action(0, 1, 0.0); }) ==
        Errc::degenerate_segment);
  CHECK(thrown_code([] {
          const ActionFunctional weightless{Lagrangian::free_particle, -1.0,
                                            0.0};
          weightless.segment_action(0, 1, 1);
        }) == Errc::invalid_argument);
}

TEST_CASE("action adds under concatenation and negates under inversion") {
  const ActionFunctional l{Lagrangian::harmonic, 1.5, 0.7};
  const PathSpec a = make_path({0.0, 2.0, 1.0}, {0.0, 0.5, 1.25});
  const PathSpec b = make_path({1.0, -0.5}, {1.25, 2.0});
  const PathSpec whole = concatenate(a, b);
  CHECK(whole.segments() == 3);
  CHECK(action(whole, l) == action(a, l) + action(b, l));

  const Real s = action(a, l);
  CHECK(action(invert(a), l) == doctest::Approx(-s).epsilon(1e-12));
  CHECK(invert(a).orientation == -1);
  CHECK(invert(a).times(0) == -1.25);
  CHECK(invert(invert(a)) == a);  // bit-exact round trip

  CHECK(thrown_code([&] { concatenate(b, a); }) == Errc::mismatched_junction);
}

TEST_CASE("the phase rule is an exponential homomorphism") {
  const ActionScale scale{0.75};
  const Real s1 = 1.375;
  const Real s2 = -0.625;
  const Complex f1 = amplitude_from_action(s1, scale);
  const Complex f2 = amplitude_from_action(s2, scale);
  CHECK(std::abs(amplitude_from_action(s1 + s2, scale) - f1 * f2) <= 1e-12);
  CHECK(amplitude_from_action(-s1, scale) == std::conj(f1));  // exact
  CHECK(std::abs(std::abs(f1) - 1.0) <= 1e-12);
  CHECK(thrown_code([] { amplitude_from_action(1.0, ActionScale{0.0}); }) ==
        Errc::invalid_argument);
}

TEST_CASE("only pure unit phases survive the amplitude-map audit") {
  const auto maps = standard_amplitude_maps();
  REQUIRE(maps.size() == 4);
  for (const AmplitudeMapCandidate& m : maps) {
    CAPTURE(m.label);
    const auto violations = check_candidate_amplitude_map(m, 400, 3);
    const bool admissible =
        m.label == "unit-phase" || m.label == "double-phase";
    CHECK(violations.empty() == admissible);
    if (m.label == "damped-phase") {
      // A growing modulus breaks inversion symmetry and unit modulus, never
      // the exponential law itself.
      std::set<Axiom> axioms;
      for (const ViolationReport& v : violations) axioms.insert(v.axiom);
      CHECK(axioms.count(Axiom::conjugate_inversion) == 1);
      CHECK(axioms.count(Axiom::unit_modulus) == 1);
      CHECK(axioms.count(Axiom::exponential) == 0);
    }
  }
}

TEST_CASE("the resonant lattice walk reproduces the free-particle kernel") {
  const ActionFunctional l{Lagrangian::free_particle, 1.0, 0.0};
  const LatticeSpec grid{64, 1.0};
  const ActionScale scale{1.0};
  const Real dt = resonant_time_step(l, grid, scale);
  CHECK(dt ==
        doctest::Approx(64.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));

  const Matrix step = lattice_step_kernel(l, grid, dt, scale);
  CHECK(unitarity_defect(step) <= 1e-8);

  const Matrix two = lattice_propagator(l, grid, 2, dt, scale);
  CHECK(max_abs_diff(two, Matrix(step * step)) <= 1e-12);

  // The entry moduli match the analytic kernel on interior points.
  const Real expected =
      grid.spacing * analytic_free_kernel_modulus(l.mass, dt, scale);
  for (int j = 16; j < 48; ++j)
    CHECK(std::abs(std::abs(step(32, j)) - expected) <= 0.02 * expected);

  CHECK(thrown_code([&] {
          lattice_step_kernel(l, LatticeSpec{kMaxLatticePoints + 1, 1.0}, dt,
                              scale);
        }) == Errc::resource_limit);
  CHECK(thrown_code([&] {
          lattice_propagator(l, grid, kMaxLatticeSteps + 1, dt, scale);
        }) == Errc::resource_limit);
}

TEST_CASE("stepwise composition holds for non-free kernels too") {
  const ActionFunctional harmonic{Lagrangian::harmonic, 1.0, 0.5};
  const LatticeSpec grid{32, 0.5};
  const ActionScale scale{1.0};
  const Matrix one = lattice_step_kernel(harmonic, grid, 0.3, scale);
  const Matrix three = lattice_propagator(harmonic, grid, 3, 0.3, scale);
  CHECK(max_abs_diff(three, Matrix(one * one * one)) <= 1e-12);
}
