#include "seqamp/generators.hpp"

#include <string>
#include <utility>

namespace seqamp {
namespace {

// Fisher-Yates on {0, ..., n-1}, driven by the portable Rng.
std::vector<int> shuffled_indices(Rng& rng, int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(idx[i], idx[rng.uniform_int(0, i)]);
  return idx;
}

}  // namespace

std::vector<IndexSet> random_partition(Rng& rng, int atomic_count,
                                       int blocks) {
  if (atomic_count < 1 || blocks < 1 || blocks > atomic_count)
    fail(Errc::invalid_argument,
         "random_partition: need 1 <= blocks <= atomic_count");
  const std::vector<int> idx = shuffled_indices(rng, atomic_count);
  std::vector<std::vector<int>> buckets(blocks);
  for (int b = 0; b < blocks; ++b) buckets[b].push_back(idx[b]);
  for (int i = blocks; i < atomic_count; ++i)
    buckets[rng.uniform_int(0, blocks - 1)].push_back(idx[i]);
  std::vector<IndexSet> out;
  out.reserve(blocks);
  for (auto& b : buckets) out.emplace_back(std::move(b));
  return out;
}

IndexSet random_subset(Rng& rng, int atomic_count, int size) {
  if (size < 1 || size > atomic_count)
    fail(Errc::invalid_argument,
         "random_subset: need 1 <= size <= atomic_count");
  std::vector<int> idx = shuffled_indices(rng, atomic_count);
  idx.resize(size);
  return IndexSet(std::move(idx));
}

const MeasurementId& FrameModel::pick_measurement(Rng& rng) const {
  return measurements[rng.uniform_int(
      0, static_cast<int>(measurements.size()) - 1)];
}

FrameModel random_frame_model(Rng& rng, int dim, int n_measurements,
                              int n_interactions) {
  if (dim < 2 || n_measurements < 1 || n_interactions < 0)
    fail(Errc::invalid_argument, "random_frame_model: bad shape");
  FrameModel fm{AmplitudeModel(dim), {}, {}, {}, {}};
  for (int q = 0; q < n_measurements; ++q) {
    fm.measurements.push_back("M" + std::to_string(q));
    fm.model.add_measurement(Measurement(fm.measurements.back(), dim));
    fm.frames.push_back(q == 0 ? Matrix::Identity(dim, dim)
                               : random_unitary(dim, rng));
  }
  for (int g = 0; g < n_interactions; ++g) {
    fm.interactions.push_back("g" + std::to_string(g + 1));
    fm.evolutions.push_back(random_unitary(dim, rng));
  }
  for (int a = 0; a < n_measurements; ++a) {
    for (int b = 0; b < n_measurements; ++b) {
      if (a != b)
        fm.model.add_transition(fm.measurements[a], fm.measurements[b],
                                kIdentityInteraction,
                                fm.frames[b].adjoint() * fm.frames[a]);
      for (int g = 0; g < n_interactions; ++g)
        fm.model.add_transition(
            fm.measurements[a], fm.measurements[b], fm.interactions[g],
            fm.frames[b].adjoint() * fm.evolutions[g] * fm.frames[a]);
    }
  }
  return fm;
}

InteractionId random_interaction(Rng& rng, const FrameModel& fm) {
  if (fm.interactions.empty()) return kIdentityInteraction;
  const int roll = rng.uniform_int(0, 5);
  if (roll == 0) return kIdentityInteraction;
  const InteractionId& g = fm.interactions[rng.uniform_int(
      0, static_cast<int>(fm.interactions.size()) - 1)];
  return roll == 1 ? invert_interaction(g) : g;
}

Sequence random_sequence(Rng& rng, const FrameModel& fm, int n_events,
                         bool coarse_interior, int t0) {
  if (n_events < 2)
    fail(Errc::invalid_argument, "random_sequence: need at least two events");
  const int dim = fm.model.dim();
  std::vector<Event> events;
  std::vector<InteractionId> interactions;
  for (int i = 0; i < n_events; ++i) {
    const Measurement& m = fm.model.measurement(fm.pick_measurement(rng));
    const bool endpoint = i == 0 || i == n_events - 1;
    IndexSet outcome =
        (!endpoint && coarse_interior && rng.coin())
            ? random_subset(rng, dim, rng.uniform_int(2, dim))
            : IndexSet::single(rng.uniform_int(0, dim - 1));
    events.emplace_back(t0 + i, m, std::move(outcome));
    if (i + 1 < n_events) interactions.push_back(random_interaction(rng, fm));
  }
  return Sequence("S", std::move(events), std::move(interactions));
}

Layout random_layout(Rng& rng, const FrameModel& fm, int n_interior) {
  if (n_interior < 0)
    fail(Errc::invalid_argument, "random_layout: negative interior count");
  const int dim = fm.model.dim();
  Layout layout{
      Event(0, fm.model.measurement(fm.pick_measurement(rng)),
            IndexSet::single(rng.uniform_int(0, dim - 1))),
      random_interaction(rng, fm),
      {},
      fm.model.measurement(fm.pick_measurement(rng))};
  for (int i = 0; i < n_interior; ++i) {
    const Measurement& base = fm.model.measurement(fm.pick_measurement(rng));
    const int blocks = rng.uniform_int(1, dim);
    Measurement coarse =
        blocks == dim
            ? base
            : Measurement(base.id(), dim, random_partition(rng, dim, blocks));
    layout.chain.push_back({std::move(coarse), random_interaction(rng, fm)});
  }
  return layout;
}

}  // namespace seqamp
