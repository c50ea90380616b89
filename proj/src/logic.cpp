#include "seqamp/logic.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace seqamp {

InteractionId invert_interaction(const InteractionId& id) {
  if (id == kIdentityInteraction) return id;
  if (!id.empty() && id.front() == '~') return id.substr(1);
  return "~" + id;
}

IndexSet::IndexSet(std::initializer_list<int> indices)
    : IndexSet(std::vector<int>(indices)) {}

IndexSet::IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  if (!indices_.empty() && indices_.front() < 0)
    fail(Errc::out_of_range, "negative outcome index");
}

IndexSet IndexSet::range(int count) {
  std::vector<int> v(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(v.begin(), v.end(), 0);
  return IndexSet(std::move(v));
}

bool IndexSet::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool IndexSet::subset_of(const IndexSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

bool IndexSet::disjoint_with(const IndexSet& other) const {
  auto it = indices_.begin();
  auto jt = other.indices_.begin();
  while (it != indices_.end() && jt != other.indices_.end()) {
    if (*it == *jt) return false;
    (*it < *jt) ? ++it : ++jt;
  }
  return true;
}

IndexSet IndexSet::unioned(const IndexSet& other) const {
  std::vector<int> merged;
  merged.reserve(indices_.size() + other.indices_.size());
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(merged));
  return IndexSet(std::move(merged));
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i)
    os << (i ? "," : "") << indices_[i];
  os << '}';
  return os.str();
}

namespace {

std::vector<IndexSet> atomic_partition(int count) {
  std::vector<IndexSet> blocks;
  blocks.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) blocks.push_back(IndexSet::single(i));
  return blocks;
}

// Canonical form: blocks ordered by smallest element. Validates that the
// blocks partition {0, ..., count-1} exactly (count <= 64, so coverage and
// disjointness reduce to one bitmask).
std::vector<IndexSet> canonicalize_partition(int count,
                                             std::vector<IndexSet> blocks) {
  std::uint64_t seen = 0;
  std::uint64_t covered = 0;
  for (const IndexSet& block : blocks) {
    if (block.empty()) fail(Errc::invalid_partition, "empty block");
    for (int i : block) {
      if (i >= count)
        fail(Errc::invalid_partition,
             "block index " + std::to_string(i) + " outside 0.." +
                 std::to_string(count - 1));
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (seen & bit)
        fail(Errc::invalid_partition,
             "index " + std::to_string(i) + " appears in two blocks");
      seen |= bit;
    }
  }
  covered = count == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << count) - 1;
  if (seen != covered)
    fail(Errc::invalid_partition, "blocks do not cover every atomic outcome");
  std::sort(blocks.begin(), blocks.end(),
            [](const IndexSet& a, const IndexSet& b) {
              return a.front() < b.front();
            });
  return blocks;
}

}  // namespace

Measurement::Measurement(MeasurementId id, int atomic_count)
    : Measurement(std::move(id), atomic_count, atomic_partition(atomic_count)) {
}

Measurement::Measurement(MeasurementId id, int atomic_count,
                         std::vector<IndexSet> blocks)
    : id_(std::move(id)), atomic_count_(atomic_count) {
  if (id_.empty()) fail(Errc::invalid_argument, "empty measurement id");
  if (atomic_count_ < 2)
    fail(Errc::invalid_argument,
         "measurement needs at least two atomic outcomes");
  if (atomic_count_ > kMaxAtomicOutcomes)
    fail(Errc::resource_limit,
         "measurement exceeds " + std::to_string(kMaxAtomicOutcomes) +
             " atomic outcomes");
  partition_ = canonicalize_partition(atomic_count_, std::move(blocks));
}

bool Measurement::is_atomic() const {
  return static_cast<int>(partition_.size()) == atomic_count_;
}

bool Measurement::is_trivial() const { return partition_.size() == 1; }

const IndexSet& Measurement::block_of(int index) const {
  for (const IndexSet& block : partition_)
    if (block.contains(index)) return block;
  fail(Errc::out_of_range,
       "no block contains index " + std::to_string(index));
}

Measurement coarse_grain(const Measurement& m,
                         const std::vector<IndexSet>& groups) {
  // Union-find over current blocks: each group merges the blocks of all its
  // members.
  std::vector<int> parent(m.partition().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto block_index = [&m](int atomic) {
    for (std::size_t b = 0; b < m.partition().size(); ++b)
      if (m.partition()[b].contains(atomic)) return static_cast<int>(b);
    fail(Errc::invalid_partition,
         "group index " + std::to_string(atomic) + " outside 0.." +
             std::to_string(m.atomic_count() - 1));
  };
  for (const IndexSet& group : groups) {
    if (group.empty()) fail(Errc::invalid_partition, "empty group");
    const int root = find(block_index(group.front()));
    for (int i : group) parent[find(block_index(i))] = root;
  }
  std::vector<IndexSet> merged(m.partition().size());
  for (std::size_t b = 0; b < m.partition().size(); ++b) {
    IndexSet& slot = merged[static_cast<std::size_t>(find(static_cast<int>(b)))];
    slot = slot.unioned(m.partition()[b]);
  }
  std::vector<IndexSet> blocks;
  for (IndexSet& s : merged)
    if (!s.empty()) blocks.push_back(std::move(s));
  return Measurement(m.id(), m.atomic_count(), std::move(blocks));
}

Measurement trivialize(const Measurement& m) {
  return Measurement(m.id(), m.atomic_count(),
                     {IndexSet::range(m.atomic_count())});
}

Event::Event(int time, MeasurementId measurement, int atomic_count,
             IndexSet outcome)
    : time(time),
      measurement(std::move(measurement)),
      atomic_count(atomic_count),
      outcome(std::move(outcome)) {
  if (this->measurement.empty())
    fail(Errc::invalid_argument, "empty measurement id in event");
  if (this->atomic_count < 2)
    fail(Errc::invalid_argument, "event needs at least two atomic outcomes");
  if (this->outcome.empty())
    fail(Errc::invalid_argument, "empty outcome in event");
  if (this->outcome.back() >= this->atomic_count)
    fail(Errc::out_of_range,
         "outcome index " + std::to_string(this->outcome.back()) +
             " outside 0.." + std::to_string(this->atomic_count - 1));
}

Event::Event(int time, const Measurement& m, IndexSet outcome)
    : Event(time, m.id(), m.atomic_count(), std::move(outcome)) {}

Sequence::Sequence(SystemId system, std::vector<Event> events,
                   std::vector<InteractionId> interactions)
    : system_(std::move(system)),
      events_(std::move(events)),
      interactions_(std::move(interactions)) {
  if (system_.empty()) fail(Errc::invalid_argument, "empty system id");
  if (events_.size() < 2)
    fail(Errc::invalid_argument, "sequence needs at least two events");
  if (interactions_.size() + 1 != events_.size())
    fail(Errc::invalid_argument,
         "sequence needs exactly one interaction per interval");
  for (std::size_t i = 1; i < events_.size(); ++i)
    if (events_[i - 1].time >= events_[i].time)
      fail(Errc::invalid_argument, "event times must strictly increase");
  if (!events_.front().atomic() || !events_.back().atomic())
    fail(Errc::non_atomic_endpoint,
         "first and final outcomes must be atomic");
}

std::string Sequence::str() const {
  std::ostringstream os;
  os << system_ << ": ";
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i) os << " -" << interactions_[i - 1] << "-> ";
    const Event& e = events_[i];
    os << e.measurement << e.outcome.str() << "@" << e.time;
  }
  return os.str();
}

Sequence series(const Sequence& a, const Sequence& b) {
  if (a.system() != b.system())
    fail(Errc::mismatched_junction,
         "series requires one system, got '" + a.system() + "' and '" +
             b.system() + "'");
  if (a.back() != b.front())
    fail(Errc::mismatched_junction,
         "final event of the first sequence must equal the initial event "
         "of the second");
  if (!a.back().atomic())
    fail(Errc::non_atomic_endpoint, "junction outcome must be atomic");
  std::vector<Event> events = a.events();
  events.insert(events.end(), b.events().begin() + 1, b.events().end());
  std::vector<InteractionId> interactions = a.interactions();
  interactions.insert(interactions.end(), b.interactions().begin(),
                      b.interactions().end());
  return Sequence(a.system(), std::move(events), std::move(interactions));
}

Sequence parallel(const Sequence& a, const Sequence& b) {
  auto incompatible = [](const std::string& why) {
    fail(Errc::not_parallel_compatible, why);
  };
  if (a.system() != b.system()) incompatible("different systems");
  if (a.size() != b.size()) incompatible("different lengths");
  if (a.interactions() != b.interactions())
    incompatible("different interactions");
  int differing = -1;
  for (int i = 0; i < a.size(); ++i) {
    const Event& ea = a.events()[static_cast<std::size_t>(i)];
    const Event& eb = b.events()[static_cast<std::size_t>(i)];
    if (ea.time != eb.time) incompatible("different event times");
    if (ea.measurement != eb.measurement || ea.atomic_count != eb.atomic_count)
      incompatible("different measurements");
    if (ea.outcome == eb.outcome) continue;
    if (differing >= 0) incompatible("outcomes differ at two events");
    differing = i;
  }
  if (differing < 0) incompatible("sequences are identical");
  if (differing == 0 || differing == a.size() - 1)
    incompatible("outcomes differ at an endpoint");
  const IndexSet& oa = a.events()[static_cast<std::size_t>(differing)].outcome;
  const IndexSet& ob = b.events()[static_cast<std::size_t>(differing)].outcome;
  if (!oa.disjoint_with(ob)) incompatible("differing outcomes overlap");
  std::vector<Event> events = a.events();
  events[static_cast<std::size_t>(differing)].outcome = oa.unioned(ob);
  return Sequence(a.system(), std::move(events), a.interactions());
}

std::string compose_ids(const std::string& left, const std::string& right) {
  return left + kComposeSeparator + right;
}

IndexSet CompositeOutcome::flatten(int right_atomic_count) const {
  std::vector<int> flat;
  flat.reserve(left.indices.indices().size() *
               right.indices.indices().size());
  for (int j : left.indices)
    for (int k : right.indices) flat.push_back(j * right_atomic_count + k);
  return IndexSet(std::move(flat));
}

Sequence compose(const Sequence& a, const Sequence& b) {
  if (a.system() == b.system())
    fail(Errc::same_system,
         "composition requires two distinct systems, got '" + a.system() +
             "' twice");
  if (a.size() != b.size())
    fail(Errc::length_mismatch, "composition requires equal lengths");
  std::vector<Event> events;
  events.reserve(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) {
    const Event& ea = a.events()[static_cast<std::size_t>(i)];
    const Event& eb = b.events()[static_cast<std::size_t>(i)];
    if (ea.time != eb.time)
      fail(Errc::time_mismatch,
           "composition requires pairwise equal event times");
    const CompositeOutcome joint{{ea.measurement, ea.outcome},
                                 {eb.measurement, eb.outcome}};
    events.emplace_back(ea.time, compose_ids(ea.measurement, eb.measurement),
                        ea.atomic_count * eb.atomic_count,
                        joint.flatten(eb.atomic_count));
  }
  std::vector<InteractionId> interactions;
  interactions.reserve(a.interactions().size());
  for (std::size_t i = 0; i < a.interactions().size(); ++i)
    interactions.push_back(
        compose_ids(a.interactions()[i], b.interactions()[i]));
  return Sequence(compose_ids(a.system(), b.system()), std::move(events),
                  std::move(interactions));
}

Sequence invert(const Sequence& s) {
  std::vector<Event> events;
  events.reserve(s.events().size());
  for (auto it = s.events().rbegin(); it != s.events().rend(); ++it) {
    Event e = *it;
    e.time = -e.time;
    events.push_back(std::move(e));
  }
  std::vector<InteractionId> interactions;
  interactions.reserve(s.interactions().size());
  for (auto it = s.interactions().rbegin(); it != s.interactions().rend();
       ++it)
    interactions.push_back(invert_interaction(*it));
  return Sequence(s.system(), std::move(events), std::move(interactions));
}

Measurement compose_measurements(const Measurement& a, const Measurement& b) {
  std::vector<IndexSet> blocks;
  blocks.reserve(a.partition().size() * b.partition().size());
  for (const IndexSet& ba : a.partition())
    for (const IndexSet& bb : b.partition()) {
      const CompositeOutcome joint{{a.id(), ba}, {b.id(), bb}};
      blocks.push_back(joint.flatten(b.atomic_count()));
    }
  return Measurement(compose_ids(a.id(), b.id()),
                     a.atomic_count() * b.atomic_count(), std::move(blocks));
}

}  // namespace seqamp
