#include "seqamp/disturbance.hpp"

#include <algorithm>

#include "seqamp/random.hpp"

namespace seqamp {

namespace {

void check_position(const Layout& layout, int position) {
  const int last = static_cast<int>(layout.chain.size()) + 1;
  if (position < 1 || position > last)
    fail(Errc::invalid_position,
         "insertion position must be between 1 and " + std::to_string(last));
}

const Measurement& measurement_at(const Layout& layout, int position) {
  if (position <= static_cast<int>(layout.chain.size()))
    return layout.chain[static_cast<std::size_t>(position - 1)].measurement;
  return layout.final_measurement;
}

Layout insert_step(const Layout& layout, int position, Measurement trivial) {
  Layout out = layout;
  out.chain.insert(out.chain.begin() + (position - 1),
                   ChainStep{std::move(trivial), kIdentityInteraction});
  return out;
}

}  // namespace

Layout insert_trivial(const Layout& layout, int position) {
  check_position(layout, position);
  return insert_step(layout, position,
                     trivialize(measurement_at(layout, position)));
}

Layout insert_trivial(const Layout& layout, int position,
                      const Measurement& trivial) {
  check_position(layout, position);
  if (!trivial.is_trivial())
    fail(Errc::invalid_argument,
         "inserted measurement '" + trivial.id() + "' is not trivial");
  if (trivial.atomic_count() != layout.preparation.atomic_count)
    fail(Errc::invalid_argument,
         "inserted measurement '" + trivial.id() + "' has the wrong dimension");
  return insert_step(layout, position, trivial);
}

ProbabilityTable quantum_prediction(const AmplitudeModel& model,
                                    const Layout& layout) {
  return outcome_distribution(model, layout.preparation,
                              layout.first_interaction, layout.chain,
                              layout.final_measurement);
}

ProbabilityTable classical_prediction(const AmplitudeModel& model,
                                      const Layout& layout) {
  const bool repeats_preparation =
      layout.preparation.measurement == layout.final_measurement.id();
  auto stochastic = [&](const MeasurementId& from, const MeasurementId& to,
                        const InteractionId& g) {
    const RealMatrix s = model.resolve(from, to, g).cwiseAbs2();
    if (repeats_preparation) {
      const Real asym = (s - s.transpose()).cwiseAbs().maxCoeff();
      if (asym > kNormTol)
        fail(Errc::asymmetric_transitions,
             "transition probabilities '" + from + "' -" + g + "-> '" + to +
                 "' are not symmetric; the classical repeat prediction is "
                 "undefined");
    }
    return s;
  };

  RealVector p = RealVector::Zero(model.dim());
  p(layout.preparation.outcome.front()) = 1.0;
  MeasurementId current = layout.preparation.measurement;
  InteractionId g = layout.first_interaction;
  for (const ChainStep& step : layout.chain) {
    p = stochastic(current, step.measurement.id(), g) * p;
    current = step.measurement.id();
    g = step.next_interaction;
  }
  p = stochastic(current, layout.final_measurement.id(), g) * p;

  ProbabilityTable table{layout.final_measurement.id(), {}};
  for (const IndexSet& block : layout.final_measurement.partition()) {
    Real sum = 0;
    for (int i : block) sum += p(i);
    table.entries.emplace_back(block, sum);
  }
  return table;
}

Real repeatability_gap(Real alpha) {
  if (alpha < 0 || alpha > 1)
    fail(Errc::out_of_range, "transition probability must lie in [0, 1]");
  return alpha * alpha + (1 - alpha) * (1 - alpha);
}

namespace {

std::vector<Real> block_weights(const Vector& w,
                                const std::vector<IndexSet>& blocks) {
  std::vector<Real> weights(blocks.size(), 0.0);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i : blocks[b]) weights[b] += std::norm(w(i));
  return weights;
}

// Draws an index with probability proportional to its weight; round-off
// shortfall falls back to the last positive-weight index.
std::size_t sample_index(const std::vector<Real>& weights, Real r) {
  Real cumulative = 0;
  std::size_t fallback = 0;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (weights[b] <= 0) continue;
    fallback = b;
    cumulative += weights[b];
    if (r < cumulative) return b;
  }
  return fallback;
}

}  // namespace

ProbabilityTable monte_carlo(const AmplitudeModel& model, const Layout& layout,
                             long runs, std::uint64_t seed) {
  if (runs <= 0) fail(Errc::invalid_argument, "need a positive run count");
  Rng rng(seed);
  const auto& blocks = layout.final_measurement.partition();
  std::vector<long> counts(blocks.size(), 0);

  for (long run = 0; run < runs; ++run) {
    Vector v = Vector::Zero(model.dim());
    v(layout.preparation.outcome.front()) = Complex(1, 0);
    MeasurementId current = layout.preparation.measurement;
    InteractionId g = layout.first_interaction;
    for (const ChainStep& step : layout.chain) {
      const Vector w = model.resolve(current, step.measurement.id(), g) * v;
      // Draw one partition block with its outcome probability, then collapse.
      const auto& parts = step.measurement.partition();
      const std::size_t pick =
          sample_index(block_weights(w, parts), rng.uniform01());
      v = Vector::Zero(model.dim());
      for (int i : parts[pick]) v(i) = w(i);
      v /= v.norm();
      current = step.measurement.id();
      g = step.next_interaction;
    }
    const Vector w =
        model.resolve(current, layout.final_measurement.id(), g) * v;
    ++counts[sample_index(block_weights(w, blocks), rng.uniform01())];
  }

  ProbabilityTable table{layout.final_measurement.id(), {}};
  for (std::size_t b = 0; b < blocks.size(); ++b)
    table.entries.emplace_back(blocks[b],
                               static_cast<Real>(counts[b]) /
                                   static_cast<Real>(runs));
  return table;
}

DisturbanceReport analyze_disturbance(const AmplitudeModel& model,
                                      const Layout& layout, int position) {
  const Layout inserted = insert_trivial(layout, position);
  DisturbanceReport report{quantum_prediction(model, layout),
                           quantum_prediction(model, inserted),
                           classical_prediction(model, inserted), 0, 0};
  report.max_quantum_deviation =
      ProbabilityTable::max_deviation(report.baseline, report.with_trivial);
  report.max_classical_deviation = ProbabilityTable::max_deviation(
      classical_prediction(model, layout), report.classical);
  return report;
}

}  // namespace seqamp
