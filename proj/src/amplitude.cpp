#include "seqamp/amplitude.hpp"

#include <algorithm>
#include <sstream>

namespace seqamp {

namespace {

std::string describe(const TransitionKey& key) {
  return "'" + key.from + "' -" + key.interaction + "-> '" + key.to + "'";
}

bool is_inverse_id(const InteractionId& g) {
  return g != kIdentityInteraction && !g.empty() && g.front() == '~';
}

}  // namespace

AmplitudeModel::AmplitudeModel(int dim, bool validate)
    : dim_(dim), validate_(validate) {
  if (dim_ < 2 || dim_ > kMaxAtomicOutcomes)
    fail(Errc::invalid_argument,
         "model dimension must be between 2 and " +
             std::to_string(kMaxAtomicOutcomes));
  identity_ = Matrix::Identity(dim_, dim_);
}

const Matrix& AmplitudeModel::check_unitary(const Matrix& m,
                                            const std::string& what) const {
  if (m.rows() != dim_ || m.cols() != dim_)
    fail(Errc::dimension_mismatch,
         what + " must be " + std::to_string(dim_) + "x" +
             std::to_string(dim_));
  if (validate_) {
    const Real defect = unitarity_defect(m);
    if (defect > kUnitaryTol) {
      std::ostringstream os;
      os << what << " is not unitary (defect " << defect << ")";
      fail(Errc::not_unitary, os.str());
    }
  }
  return m;
}

void AmplitudeModel::add_measurement(Measurement m) {
  if (!m.is_atomic())
    fail(Errc::invalid_argument,
         "model measurements must be atomic; coarse-grain in sequences");
  if (m.atomic_count() != dim_)
    fail(Errc::dimension_mismatch,
         "measurement '" + m.id() + "' has " +
             std::to_string(m.atomic_count()) + " outcomes, model has " +
             std::to_string(dim_));
  const MeasurementId id = m.id();
  measurements_.insert_or_assign(id, std::move(m));
}

void AmplitudeModel::add_interaction(InteractionId id, Matrix u) {
  if (id.empty()) fail(Errc::invalid_argument, "empty interaction id");
  check_unitary(u, "interaction '" + id + "'");
  interactions_.insert_or_assign(std::move(id), std::move(u));
  derived_.clear();
}

void AmplitudeModel::add_transition(MeasurementId from, MeasurementId to,
                                    InteractionId g, Matrix t) {
  TransitionKey key{std::move(from), std::move(to), std::move(g)};
  check_unitary(t, "transition " + describe(key));
  if (key.from == key.to && key.interaction == kIdentityInteraction &&
      max_abs_diff(t, identity_) > kUnitaryTol)
    fail(Errc::invalid_argument,
         "the identity-interval transition of '" + key.from +
             "' onto itself must be the identity matrix");
  transitions_.insert_or_assign(std::move(key), std::move(t));
  derived_.clear();
}

bool AmplitudeModel::has_measurement(const MeasurementId& id) const {
  return measurements_.count(id) > 0;
}

const Measurement& AmplitudeModel::measurement(const MeasurementId& id) const {
  const auto it = measurements_.find(id);
  if (it == measurements_.end())
    fail(Errc::unresolved_reference, "unknown measurement '" + id + "'");
  return it->second;
}

std::vector<MeasurementId> AmplitudeModel::measurement_ids() const {
  std::vector<MeasurementId> ids;
  ids.reserve(measurements_.size());
  for (const auto& [id, m] : measurements_) ids.push_back(id);
  return ids;
}

const Matrix& AmplitudeModel::cache(TransitionKey key, Matrix value) const {
  return derived_.emplace(std::move(key), std::move(value)).first->second;
}

const Matrix& AmplitudeModel::resolve(const MeasurementId& from,
                                      const MeasurementId& to,
                                      const InteractionId& g) const {
  const TransitionKey key{from, to, g};
  if (const auto it = transitions_.find(key); it != transitions_.end())
    return it->second;
  if (const auto it = derived_.find(key); it != derived_.end())
    return it->second;
  if (is_inverse_id(g))
    return cache(key, resolve(to, from, invert_interaction(g)).adjoint());
  if (from == to) {
    if (const auto it = interactions_.find(g); it != interactions_.end())
      return it->second;
    if (g == kIdentityInteraction) return identity_;
  }
  if (g == kIdentityInteraction) {
    const TransitionKey reverse{to, from, g};
    if (const auto it = transitions_.find(reverse); it != transitions_.end())
      return cache(key, it->second.adjoint());
  }
  fail(Errc::unknown_transition, "no transition " + describe(key));
}

namespace {

void check_event_dimension(const AmplitudeModel& model, const Event& e) {
  if (e.atomic_count != model.dim())
    fail(Errc::dimension_mismatch,
         "event on measurement '" + e.measurement + "' has " +
             std::to_string(e.atomic_count) + " atomic outcomes, model has " +
             std::to_string(model.dim()));
  if (!model.has_measurement(e.measurement))
    fail(Errc::unresolved_reference,
         "unknown measurement '" + e.measurement + "'");
}

Vector masked(const Vector& v, const IndexSet& keep) {
  Vector w = Vector::Zero(v.size());
  for (int i : keep) w(i) = v(i);
  return w;
}

}  // namespace

Amplitude amplitude(const AmplitudeModel& model, const Sequence& s) {
  for (const Event& e : s.events()) check_event_dimension(model, e);
  Vector v = Vector::Zero(model.dim());
  v(s.front().outcome.front()) = Complex(1, 0);
  for (std::size_t i = 1; i < s.events().size(); ++i) {
    const Event& prev = s.events()[i - 1];
    const Event& next = s.events()[i];
    const Matrix& t =
        model.resolve(prev.measurement, next.measurement,
                      s.interactions()[i - 1]);
    v = masked(t * v, next.outcome);
  }
  return v(s.back().outcome.front());
}

Real probability(const AmplitudeModel& model, const Sequence& s) {
  return std::norm(amplitude(model, s));
}

Amplitude amplitude_of_inverse(const AmplitudeModel& model,
                               const Sequence& s) {
  return amplitude(model, invert(s));
}

Real ProbabilityTable::total() const {
  Real sum = 0;
  for (const auto& [outcome, p] : entries) sum += p;
  return sum;
}

Real ProbabilityTable::value(const IndexSet& outcome) const {
  for (const auto& [key, p] : entries)
    if (key == outcome) return p;
  fail(Errc::out_of_range,
       "no entry for outcome " + outcome.str() + " of '" + measurement + "'");
}

Real ProbabilityTable::max_deviation(const ProbabilityTable& a,
                                     const ProbabilityTable& b) {
  if (a.measurement != b.measurement || a.entries.size() != b.entries.size())
    fail(Errc::reference_mismatch,
         "probability tables address different measurements");
  Real dev = 0;
  for (const auto& [outcome, p] : a.entries)
    dev = std::max(dev, std::abs(p - b.value(outcome)));
  return dev;
}

ProbabilityTable outcome_distribution(const AmplitudeModel& model,
                                      const Event& preparation,
                                      const InteractionId& first_interaction,
                                      const std::vector<ChainStep>& chain,
                                      const Measurement& final_measurement) {
  if (!preparation.atomic())
    fail(Errc::invalid_argument, "preparation outcome must be atomic");
  check_event_dimension(model, preparation);
  if (final_measurement.atomic_count() != model.dim())
    fail(Errc::dimension_mismatch, "final measurement dimension mismatch");

  // Each branch is one joint assignment of interior partition blocks; blocks
  // of one measurement never interfere, so amplitudes are propagated within
  // a branch and probabilities summed across branches at the end.
  std::vector<Vector> branches;
  {
    Vector v = Vector::Zero(model.dim());
    v(preparation.outcome.front()) = Complex(1, 0);
    branches.push_back(std::move(v));
  }
  MeasurementId current = preparation.measurement;
  InteractionId g = first_interaction;
  for (const ChainStep& step : chain) {
    if (step.measurement.atomic_count() != model.dim())
      fail(Errc::dimension_mismatch,
           "chain measurement '" + step.measurement.id() +
               "' dimension mismatch");
    const Matrix& t = model.resolve(current, step.measurement.id(), g);
    std::vector<Vector> next;
    next.reserve(branches.size() * step.measurement.partition().size());
    for (const Vector& branch : branches) {
      const Vector w = t * branch;
      for (const IndexSet& block : step.measurement.partition()) {
        Vector piece = masked(w, block);
        if (piece.squaredNorm() > 0) next.push_back(std::move(piece));
      }
    }
    branches = std::move(next);
    current = step.measurement.id();
    g = step.next_interaction;
  }
  const Matrix& t = model.resolve(current, final_measurement.id(), g);
  ProbabilityTable table{final_measurement.id(), {}};
  table.entries.reserve(final_measurement.partition().size());
  for (const IndexSet& block : final_measurement.partition())
    table.entries.emplace_back(block, 0.0);
  for (const Vector& branch : branches) {
    const Vector w = t * branch;
    for (auto& [block, p] : table.entries) p += masked(w, block).squaredNorm();
  }
  return table;
}

ProbabilityTable outcome_distribution(const AmplitudeModel& model,
                                      const Event& preparation,
                                      const std::vector<ChainStep>& chain,
                                      const Measurement& final_measurement) {
  return outcome_distribution(model, preparation, kIdentityInteraction, chain,
                              final_measurement);
}

namespace {

struct SameMeasurementOption {
  InteractionId id;
  Matrix u;
};

// Stored same-measurement evolutions together with their formal inverses and
// the identity; used to pair one factor's transition with "the other system
// merely evolving".
std::vector<SameMeasurementOption> same_measurement_options(
    const AmplitudeModel& m) {
  std::vector<SameMeasurementOption> out;
  out.push_back({kIdentityInteraction, Matrix::Identity(m.dim(), m.dim())});
  for (const auto& [id, u] : m.interactions()) {
    out.push_back({id, u});
    out.push_back({invert_interaction(id), u.adjoint()});
  }
  return out;
}

struct StoredTransition {
  TransitionKey key;
  Matrix t;
};

// Stored transitions closed under formal inversion, so composites resolve
// ids like "~g1*~g2" that arise from inverting composed sequences.
std::vector<StoredTransition> closed_transitions(const AmplitudeModel& m) {
  std::vector<StoredTransition> out;
  for (const auto& [key, t] : m.transitions()) out.push_back({key, t});
  for (const auto& [key, t] : m.transitions())
    out.push_back(
        {{key.to, key.from, invert_interaction(key.interaction)},
         t.adjoint()});
  return out;
}

}  // namespace

AmplitudeModel tensor_product(const AmplitudeModel& a,
                              const AmplitudeModel& b) {
  if (a.dim() * b.dim() > kMaxAtomicOutcomes)
    fail(Errc::resource_limit,
         "joint dimension " + std::to_string(a.dim() * b.dim()) +
             " exceeds " + std::to_string(kMaxAtomicOutcomes));
  AmplitudeModel joint(a.dim() * b.dim(), a.validating() && b.validating());

  for (const MeasurementId& ia : a.measurement_ids())
    for (const MeasurementId& ib : b.measurement_ids())
      joint.add_measurement(
          compose_measurements(a.measurement(ia), b.measurement(ib)));

  const auto options_a = same_measurement_options(a);
  const auto options_b = same_measurement_options(b);
  for (const auto& oa : options_a)
    for (const auto& ob : options_b)
      joint.add_interaction(compose_ids(oa.id, ob.id), kron(oa.u, ob.u));

  const auto stored_a = closed_transitions(a);
  const auto stored_b = closed_transitions(b);
  for (const auto& ta : stored_a)
    for (const auto& tb : stored_b)
      joint.add_transition(compose_ids(ta.key.from, tb.key.from),
                           compose_ids(ta.key.to, tb.key.to),
                           compose_ids(ta.key.interaction, tb.key.interaction),
                           kron(ta.t, tb.t));
  for (const auto& ta : stored_a)
    for (const MeasurementId& ib : b.measurement_ids())
      for (const auto& ob : options_b)
        joint.add_transition(compose_ids(ta.key.from, ib),
                             compose_ids(ta.key.to, ib),
                             compose_ids(ta.key.interaction, ob.id),
                             kron(ta.t, ob.u));
  for (const MeasurementId& ia : a.measurement_ids())
    for (const auto& oa : options_a)
      for (const auto& tb : stored_b)
        joint.add_transition(compose_ids(ia, tb.key.from),
                             compose_ids(ia, tb.key.to),
                             compose_ids(oa.id, tb.key.interaction),
                             kron(oa.u, tb.t));
  return joint;
}

}  // namespace seqamp
