#include "seqamp/action.hpp"

#include <cmath>
#include <numbers>

#include "seqamp/errors.hpp"
#include "seqamp/random.hpp"

namespace seqamp {

namespace {

void check_scale(const ActionScale& scale) {
  if (!(scale.alpha > 0))
    fail(Errc::invalid_argument, "action scale must be positive");
}

}  // namespace

PathSpec::PathSpec(RealVector positions, RealVector times, int orientation)
    : positions(std::move(positions)),
      times(std::move(times)),
      orientation(orientation) {
  if (this->positions.size() != this->times.size())
    fail(Errc::invalid_argument,
         "path needs one position per time sample");
  if (this->times.size() < 2)
    fail(Errc::invalid_argument, "path needs at least two samples");
  if (orientation != 1 && orientation != -1)
    fail(Errc::invalid_argument, "orientation must be +1 or -1");
  for (Eigen::Index i = 1; i < this->times.size(); ++i)
    if (!(this->times(i) > this->times(i - 1)))
      fail(Errc::degenerate_segment, "path times must strictly increase");
}

bool operator==(const PathSpec& a, const PathSpec& b) {
  return a.orientation == b.orientation &&
         a.positions.size() == b.positions.size() &&
         (a.positions.array() == b.positions.array()).all() &&
         (a.times.array() == b.times.array()).all();
}

PathSpec invert(const PathSpec& path) {
  return PathSpec(path.positions.reverse(), (-path.times).reverse().eval(),
                  -path.orientation);
}

PathSpec concatenate(const PathSpec& a, const PathSpec& b) {
  const Eigen::Index ka = a.times.size();
  if (a.positions(ka - 1) != b.positions(0) || a.times(ka - 1) != b.times(0) ||
      a.orientation != b.orientation)
    fail(Errc::mismatched_junction,
         "paths must share position, time and orientation at the junction");
  RealVector positions(ka + b.positions.size() - 1);
  RealVector times(positions.size());
  positions << a.positions, b.positions.tail(b.positions.size() - 1);
  times << a.times, b.times.tail(b.times.size() - 1);
  return PathSpec(std::move(positions), std::move(times), a.orientation);
}

Real ActionFunctional::segment_action(Real x0, Real x1, Real dt) const {
  if (!(mass > 0)) fail(Errc::invalid_argument, "mass must be positive");
  if (!(dt > 0)) fail(Errc::degenerate_segment, "segment duration must be positive");
  const Real dx = x1 - x0;
  const Real kinetic = mass * dx * dx / (2 * dt);
  switch (lagrangian) {
    case Lagrangian::free_particle:
      return kinetic;
    case Lagrangian::harmonic: {
      const Real mid = (x0 + x1) / 2;
      return kinetic - mass * omega * omega * mid * mid * dt / 2;
    }
  }
  fail(Errc::invalid_argument, "unknown Lagrangian");
}

Real action(const PathSpec& path, const ActionFunctional& l) {
  Real sum = 0;
  for (Eigen::Index i = 1; i < path.times.size(); ++i)
    sum += l.segment_action(path.positions(i - 1), path.positions(i),
                            path.times(i) - path.times(i - 1));
  return path.orientation * sum;
}

Complex amplitude_from_action(Real s, const ActionScale& scale) {
  check_scale(scale);
  if (!std::isfinite(s)) fail(Errc::invalid_argument, "action must be finite");
  return std::polar(1.0, scale.alpha * s);
}

std::vector<ViolationReport> check_candidate_amplitude_map(
    const AmplitudeMapCandidate& f, long samples, std::uint64_t seed,
    Real tol) {
  std::vector<ViolationReport> violations;
  long stored_exponential = 0, stored_inversion = 0, stored_modulus = 0;
  auto report = [&](Axiom axiom, long& stored, Real residual,
                    std::initializer_list<Complex> witness) {
    if (residual > tol && stored < kMaxWitnesses) {
      ++stored;
      violations.push_back({axiom, witness, residual});
    }
  };
  Rng rng(seed);
  for (long i = 0; i < samples; ++i) {
    const Real x = rng.uniform(-4, 4);
    const Real y = rng.uniform(-4, 4);
    report(Axiom::exponential, stored_exponential,
           std::abs(f.eval(x + y) - f.eval(x) * f.eval(y)),
           {Complex(x, 0), Complex(y, 0)});
    report(Axiom::conjugate_inversion, stored_inversion,
           std::abs(f.eval(-x) - std::conj(f.eval(x))), {Complex(x, 0)});
    report(Axiom::unit_modulus, stored_modulus,
           std::abs(std::abs(f.eval(x)) - 1.0), {Complex(x, 0)});
  }
  return violations;
}

std::vector<AmplitudeMapCandidate> standard_amplitude_maps() {
  return {
      {"unit-phase", [](Real x) { return std::polar(1.0, x); }},
      {"double-phase", [](Real x) { return std::polar(1.0, 2 * x); }},
      {"damped-phase",
       [](Real x) { return std::exp(x) * std::polar(1.0, x); }},
      {"cosine", [](Real x) { return Complex(std::cos(x), 0); }},
  };
}

namespace {

void check_lattice(const LatticeSpec& grid) {
  if (grid.points < 2)
    fail(Errc::invalid_argument, "lattice needs at least two points");
  if (grid.points > kMaxLatticePoints)
    fail(Errc::resource_limit,
         "lattice exceeds " + std::to_string(kMaxLatticePoints) + " points");
  if (!(grid.spacing > 0))
    fail(Errc::invalid_argument, "lattice spacing must be positive");
}

}  // namespace

Matrix lattice_step_kernel(const ActionFunctional& l, const LatticeSpec& grid,
                           Real dt, const ActionScale& scale) {
  check_lattice(grid);
  check_scale(scale);
  const int n = grid.points;
  Matrix k(n, n);
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      k(row, col) = std::polar(
          1.0, scale.alpha * l.segment_action(col * grid.spacing,
                                              row * grid.spacing, dt));
  for (int row = 0; row < n; ++row) k.row(row) /= k.row(row).norm();
  return k;
}

Matrix lattice_propagator(const ActionFunctional& l, const LatticeSpec& grid,
                          int steps, Real dt, const ActionScale& scale) {
  if (steps < 1) fail(Errc::invalid_argument, "need at least one step");
  if (steps > kMaxLatticeSteps)
    fail(Errc::resource_limit,
         "propagator exceeds " + std::to_string(kMaxLatticeSteps) + " steps");
  const Matrix k = lattice_step_kernel(l, grid, dt, scale);
  Matrix result = k;
  for (int s = 1; s < steps; ++s) result = k * result;
  return result;
}

Real resonant_time_step(const ActionFunctional& l, const LatticeSpec& grid,
                        const ActionScale& scale) {
  check_lattice(grid);
  check_scale(scale);
  return scale.alpha * l.mass * grid.spacing * grid.spacing * grid.points /
         (2 * std::numbers::pi);
}

Real analytic_free_kernel_modulus(Real mass, Real total_time,
                                  const ActionScale& scale) {
  check_scale(scale);
  if (!(mass > 0)) fail(Errc::invalid_argument, "mass must be positive");
  if (!(total_time > 0))
    fail(Errc::invalid_argument, "total time must be positive");
  return std::sqrt(mass * scale.alpha / (2 * std::numbers::pi * total_time));
}

}  // namespace seqamp
