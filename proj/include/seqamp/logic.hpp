#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "seqamp/errors.hpp"

namespace seqamp {

using SystemId = std::string;
using MeasurementId = std::string;
using InteractionId = std::string;

// Interaction id of the identity (free) evolution. Resolves to the identity
// matrix for any measurement unless a model overrides it explicitly.
inline const InteractionId kIdentityInteraction = "identity";

// Separator used when forming ids of composite systems, measurements and
// interactions from their factors.
inline constexpr char kComposeSeparator = '*';

// Largest number of atomic outcomes a single measurement may declare.
inline constexpr int kMaxAtomicOutcomes = 64;

// Returns the formal inverse of an interaction id: the identity is its own
// inverse, otherwise a leading '~' is toggled. A model resolves "~g" between
// measurements M -> N as the adjoint of its matrix for g between N -> M.
InteractionId invert_interaction(const InteractionId& id);

// Sorted duplicate-free set of outcome indices (0-based).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> indices);
  explicit IndexSet(std::vector<int> indices);

  static IndexSet single(int index) { return IndexSet{index}; }
  static IndexSet range(int count);  // {0, 1, ..., count-1}

  bool empty() const { return indices_.empty(); }
  int size() const { return static_cast<int>(indices_.size()); }
  bool is_singleton() const { return indices_.size() == 1; }
  int front() const { return indices_.front(); }
  int back() const { return indices_.back(); }

  bool contains(int index) const;
  bool subset_of(const IndexSet& other) const;
  bool disjoint_with(const IndexSet& other) const;
  IndexSet unioned(const IndexSet& other) const;

  const std::vector<int>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  std::string str() const;  // "{0,2,3}"

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> indices_;
};

// A measurement with a fixed set of atomic outcomes, possibly coarse-grained:
// the partition groups atomic outcomes into the distinguishable blocks the
// apparatus actually reports. Partitions are stored canonically (blocks
// sorted by their smallest element), so two measurements compare equal iff
// they distinguish exactly the same things.
class Measurement {
 public:
  // Atomic measurement: every outcome its own block.
  Measurement(MeasurementId id, int atomic_count);
  // Coarse-grained measurement with an explicit partition of
  // {0, ..., atomic_count-1}.
  Measurement(MeasurementId id, int atomic_count, std::vector<IndexSet> blocks);

  const MeasurementId& id() const { return id_; }
  int atomic_count() const { return atomic_count_; }
  const std::vector<IndexSet>& partition() const { return partition_; }

  bool is_atomic() const;   // all blocks singletons
  bool is_trivial() const;  // one block containing every atomic outcome

  // The block containing the given atomic index.
  const IndexSet& block_of(int index) const;

  friend bool operator==(const Measurement&, const Measurement&) = default;

 private:
  MeasurementId id_;
  int atomic_count_ = 0;
  std::vector<IndexSet> partition_;
};

// Merges the listed blocks of m's partition (given by any of their member
// indices' blocks) into coarser ones. Each entry of `groups` is a set of
// atomic indices; the blocks it touches are unioned. Untouched blocks pass
// through. The id is preserved: coarse-graining changes what is recorded,
// not which apparatus acts.
Measurement coarse_grain(const Measurement& m,
                         const std::vector<IndexSet>& groups);

// Fully coarse-grained form: a single block covering every atomic outcome.
Measurement trivialize(const Measurement& m);

// One observed event: at (ordinal) time `time`, measurement `measurement`
// with `atomic_count` atomic outcomes yielded an outcome in `outcome`. A
// singleton outcome is atomic; an outcome equal to the full range is trivial.
struct Event {
  int time = 0;
  MeasurementId measurement;
  int atomic_count = 0;
  IndexSet outcome;

  Event(int time, MeasurementId measurement, int atomic_count,
        IndexSet outcome);
  Event(int time, const Measurement& m, IndexSet outcome);

  bool atomic() const { return outcome.is_singleton(); }
  bool trivial() const { return outcome.size() == atomic_count; }

  friend bool operator==(const Event&, const Event&) = default;
};

// A measurement sequence on one system: at least two events with strictly
// increasing times, and one interaction id per interval between consecutive
// events. Both endpoint outcomes must be atomic; interior outcomes may be
// coarse-grained.
class Sequence {
 public:
  Sequence(SystemId system, std::vector<Event> events,
           std::vector<InteractionId> interactions);

  const SystemId& system() const { return system_; }
  const std::vector<Event>& events() const { return events_; }
  const std::vector<InteractionId>& interactions() const {
    return interactions_;
  }
  int size() const { return static_cast<int>(events_.size()); }

  const Event& front() const { return events_.front(); }
  const Event& back() const { return events_.back(); }

  std::string str() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  SystemId system_;
  std::vector<Event> events_;
  std::vector<InteractionId> interactions_;
};

// Series combination: concatenates a and b at their shared junction event,
// which must be atomic and identical in both (same time, measurement and
// outcome), with both sequences on the same system.
//   Errors: MismatchedJunction, NonAtomicEndpoint.
Sequence series(const Sequence& a, const Sequence& b);

// Parallel combination: a and b must differ in the outcome of exactly one
// interior event and agree everywhere else (system, times, measurements,
// interactions). The result records the union of the two outcomes there;
// the differing outcomes must be disjoint.
//   Errors: NotParallelCompatible.
Sequence parallel(const Sequence& a, const Sequence& b);

// Composition of simultaneous sequences on two distinct systems into one
// sequence on the joint system. Events are paired by position and must carry
// pairwise equal times. Outcome pairs (j, k) flatten to j * N2 + k where N2
// is b's atomic count at that event.
//   Errors: LengthMismatch, TimeMismatch, SameSystem.
Sequence compose(const Sequence& a, const Sequence& b);

// Temporal inverse: events in reverse order with times mirrored about zero
// (t_i -> -t_i) and every interaction replaced by its formal inverse.
// Involutive, and compatible with the series join:
// invert(series(a, b)) == series(invert(b), invert(a)).
Sequence invert(const Sequence& s);

// A measurement outcome referenced by id, used to address entries of
// composite outcomes and probability tables.
struct OutcomeRef {
  MeasurementId measurement;
  IndexSet indices;

  friend bool operator==(const OutcomeRef&, const OutcomeRef&) = default;
};

// Outcome of a composite measurement, kept in factored form alongside the
// flattened index set it occupies in the joint outcome space.
struct CompositeOutcome {
  OutcomeRef left;
  OutcomeRef right;

  // Flattened indices {j * right_atomic_count + k : j in left, k in right}.
  IndexSet flatten(int right_atomic_count) const;

  friend bool operator==(const CompositeOutcome&,
                         const CompositeOutcome&) = default;
};

// Id of the composite of two systems / measurements / interactions.
std::string compose_ids(const std::string& left, const std::string& right);

// Composite of two measurements on distinct systems: outcome pairs flattened
// row-major, partition blocks formed as flattened products of the factors'
// blocks.
Measurement compose_measurements(const Measurement& a, const Measurement& b);

}  // namespace seqamp
