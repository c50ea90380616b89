#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "seqamp/logic.hpp"
#include "test_util.hpp"

using namespace seqamp;
using test::atom;
using test::thrown_code;

namespace {

// [l@1, m@2, n@3] over three two-outcome measurements, identity gaps.
Sequence triple(int l, int m, int n) {
  return Sequence("S",
                  {atom(1, "L", 2, l), atom(2, "M", 2, m), atom(3, "N", 2, n)},
                  {kIdentityInteraction, kIdentityInteraction});
}

}  // namespace

TEST_CASE("index sets are sorted, duplicate-free and set-algebraic") {
  const IndexSet s{2, 0, 2, 3};
  CHECK(s.indices() == std::vector<int>{0, 2, 3});
  CHECK(s.str() == "{0,2,3}");
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(IndexSet::single(1).is_singleton());
  CHECK(IndexSet::range(3) == IndexSet{0, 1, 2});
  CHECK(IndexSet{0, 1}.subset_of(IndexSet::range(3)));
  CHECK(IndexSet{0}.disjoint_with(IndexSet{1, 2}));
  CHECK(IndexSet{0, 1}.unioned(IndexSet{2}) == IndexSet::range(3));
  CHECK(thrown_code([] { IndexSet{-1}; }) == Errc::out_of_range);
}

TEST_CASE("measurements canonicalize their partitions") {
  const Measurement atomic("A", 3);
  CHECK(atomic.is_atomic());
  CHECK_FALSE(atomic.is_trivial());
  CHECK(atomic.partition().size() == 3);

  // Blocks given out of order land sorted by smallest element.
  const Measurement coarse("C", 4, {IndexSet{3}, IndexSet{1, 2}, IndexSet{0}});
  CHECK(coarse.partition() ==
        std::vector<IndexSet>{IndexSet{0}, IndexSet{1, 2}, IndexSet{3}});
  CHECK(coarse.block_of(2) == IndexSet{1, 2});
  CHECK_FALSE(coarse.is_atomic());

  // One block covering everything is the trivial measurement.
  const Measurement trivial("T", 2, {IndexSet{0, 1}});
  CHECK(trivial.is_trivial());

  CHECK(thrown_code([] {
          Measurement("X", 2, {IndexSet{0}, IndexSet{0, 1}});
        }) == Errc::invalid_partition);
  CHECK(thrown_code([] {
          Measurement("X", 3, {IndexSet{0}, IndexSet{1}});
        }) == Errc::invalid_partition);
  CHECK(Measurement("X", kMaxAtomicOutcomes).atomic_count() ==
        kMaxAtomicOutcomes);
  CHECK(thrown_code([] { Measurement("X", kMaxAtomicOutcomes + 1); }) ==
        Errc::resource_limit);
}

TEST_CASE("coarse-graining merges blocks; trivialize collapses them all") {
  const Measurement m("M", 4);
  const Measurement c = coarse_grain(m, {IndexSet{0, 1}});
  CHECK(c.partition() ==
        std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{2}, IndexSet{3}});
  CHECK(c.id() == "M");  // same apparatus, coarser record

  CHECK(trivialize(m).is_trivial());
  CHECK(trivialize(m).partition() ==
        std::vector<IndexSet>{IndexSet::range(4)});
  CHECK(coarse_grain(Measurement("N", 2), {IndexSet{0, 1}}).is_trivial());
}

TEST_CASE("sequences demand ordered times and atomic endpoints") {
  const std::vector<Event> events{atom(1, "L", 2, 0), atom(2, "M", 2, 1)};
  CHECK(Sequence("S", events, {kIdentityInteraction}).size() == 2);

  CHECK(thrown_code([&] { Sequence("S", {events[0]}, {}); }) ==
        Errc::invalid_argument);
  CHECK(thrown_code([&] { Sequence("S", events, {}); }) ==
        Errc::invalid_argument);
  CHECK(thrown_code([&] {
          Sequence("S", {atom(2, "L", 2, 0), atom(1, "M", 2, 1)},
                   {kIdentityInteraction});
        }) == Errc::invalid_argument);
  CHECK(thrown_code([&] {
          Sequence("S",
                   {Event(1, "L", 2, IndexSet{0, 1}), atom(2, "M", 2, 1)},
                   {kIdentityInteraction});
        }) == Errc::non_atomic_endpoint);
}

TEST_CASE("series joins two sequences at a shared atomic junction") {
  const Sequence a("S", {atom(1, "L", 2, 0), atom(2, "M", 2, 1)},
                   {kIdentityInteraction});
  const Sequence b("S", {atom(2, "M", 2, 1), atom(3, "N", 2, 0)}, {"g"});
  const Sequence joined = series(a, b);
  CHECK(joined.events() == std::vector<Event>{atom(1, "L", 2, 0),
                                              atom(2, "M", 2, 1),
                                              atom(3, "N", 2, 0)});
  CHECK(joined.interactions() ==
        std::vector<InteractionId>{kIdentityInteraction, "g"});

  // Junction outcomes differ.
  const Sequence b2("S", {atom(2, "M", 2, 0), atom(3, "N", 2, 0)}, {"g"});
  CHECK(thrown_code([&] { series(a, b2); }) == Errc::mismatched_junction);
  // Junction times differ.
  const Sequence b3("S", {atom(5, "M", 2, 1), atom(6, "N", 2, 0)}, {"g"});
  CHECK(thrown_code([&] { series(a, b3); }) == Errc::mismatched_junction);
}

TEST_CASE("series is associative") {
  const Sequence a("S", {atom(1, "L", 2, 0), atom(2, "M", 2, 1)},
                   {kIdentityInteraction});
  const Sequence b("S", {atom(2, "M", 2, 1), atom(3, "N", 2, 0)}, {"g"});
  const Sequence c("S", {atom(3, "N", 2, 0), atom(4, "L", 2, 1)}, {"~g"});
  CHECK(series(series(a, b), c) == series(a, series(b, c)));
}

TEST_CASE("parallel merges one interior outcome and commutes") {
  const Sequence a = triple(0, 0, 1);
  const Sequence b = triple(0, 1, 1);
  const Sequence merged = parallel(a, b);
  CHECK(merged.events()[1].outcome == IndexSet{0, 1});
  CHECK(merged.events()[0] == a.events()[0]);
  CHECK(parallel(a, b) == parallel(b, a));

  // Differing only at an endpoint is not parallel-compatible.
  CHECK(thrown_code([&] { parallel(a, triple(1, 0, 1)); }) ==
        Errc::not_parallel_compatible);
  // Nor is differing nowhere, or in two places at once.
  CHECK(thrown_code([&] { parallel(a, a); }) ==
        Errc::not_parallel_compatible);
  CHECK(thrown_code([&] { parallel(triple(0, 0, 1), triple(1, 1, 1)); }) ==
        Errc::not_parallel_compatible);
}

TEST_CASE("series distributes over parallel from both sides") {
  const Sequence head("S", {atom(1, "L", 2, 0), atom(2, "M", 2, 1)},
                      {kIdentityInteraction});
  const Sequence tail0("S",
                       {atom(2, "M", 2, 1), atom(3, "N", 2, 0),
                        atom(4, "L", 2, 0)},
                       {kIdentityInteraction, kIdentityInteraction});
  const Sequence tail1("S",
                       {atom(2, "M", 2, 1), atom(3, "N", 2, 1),
                        atom(4, "L", 2, 0)},
                       {kIdentityInteraction, kIdentityInteraction});
  CHECK(series(head, parallel(tail0, tail1)) ==
        parallel(series(head, tail0), series(head, tail1)));

  const Sequence head0("S",
                       {atom(0, "L", 2, 1), atom(1, "N", 2, 0),
                        atom(2, "M", 2, 1)},
                       {kIdentityInteraction, kIdentityInteraction});
  const Sequence head1("S",
                       {atom(0, "L", 2, 1), atom(1, "N", 2, 1),
                        atom(2, "M", 2, 1)},
                       {kIdentityInteraction, kIdentityInteraction});
  const Sequence tail("S", {atom(2, "M", 2, 1), atom(3, "L", 2, 0)}, {"g"});
  CHECK(series(parallel(head0, head1), tail) ==
        parallel(series(head0, tail), series(head1, tail)));
}

TEST_CASE("composition pairs simultaneous events and flattens row-major") {
  const Sequence a("S1", {atom(1, "A", 2, 1), atom(2, "B", 2, 0)},
                   {kIdentityInteraction});
  const Sequence b("S2", {atom(1, "C", 3, 2), atom(2, "D", 3, 1)}, {"g"});
  const Sequence joint = compose(a, b);
  CHECK(joint.system() == "S1*S2");
  CHECK(joint.events()[0].measurement == "A*C");
  CHECK(joint.events()[0].atomic_count == 6);
  CHECK(joint.events()[0].outcome == IndexSet::single(1 * 3 + 2));
  CHECK(joint.events()[1].outcome == IndexSet::single(0 * 3 + 1));
  CHECK(joint.interactions() ==
        std::vector<InteractionId>{compose_ids(kIdentityInteraction, "g")});

  // A coarse factor outcome flattens to the set product.
  const Sequence a3("S1",
                    {atom(1, "A", 2, 1), atom(2, "B", 2, 1),
                     atom(3, "A", 2, 0)},
                    {kIdentityInteraction, kIdentityInteraction});
  const Sequence b3("S2",
                    {atom(1, "C", 3, 0), Event(2, "D", 3, IndexSet{0, 2}),
                     atom(3, "C", 3, 1)},
                    {kIdentityInteraction, kIdentityInteraction});
  CHECK(compose(a3, b3).events()[1].outcome == IndexSet{1 * 3 + 0, 1 * 3 + 2});

  CHECK(thrown_code([&] { compose(a, a); }) == Errc::same_system);
  CHECK(thrown_code([&] { compose(a, b3); }) == Errc::length_mismatch);
  const Sequence late("S2", {atom(1, "C", 3, 2), atom(5, "D", 3, 1)}, {"g"});
  CHECK(thrown_code([&] { compose(a, late); }) == Errc::time_mismatch);
}

TEST_CASE("composition is associative and interchanges with series") {
  const Sequence a("S1", {atom(1, "A", 2, 0), atom(2, "A", 2, 1)},
                   {kIdentityInteraction});
  const Sequence b("S2", {atom(1, "B", 2, 1), atom(2, "B", 2, 0)}, {"g"});
  const Sequence c("S3", {atom(1, "C", 2, 0), atom(2, "C", 2, 0)}, {"h"});
  CHECK(compose(a, compose(b, c)) == compose(compose(a, b), c));
  CHECK(compose_ids("a", compose_ids("b", "c")) ==
        compose_ids(compose_ids("a", "b"), "c"));

  // (A . B) composed with (C . D) equals (A o C) . (B o D).
  const Sequence a2("S1", {atom(2, "A", 2, 1), atom(3, "A", 2, 0)},
                    {kIdentityInteraction});
  const Sequence b2("S2", {atom(2, "B", 2, 0), atom(3, "B", 2, 1)}, {"g"});
  CHECK(compose(series(a, a2), series(b, b2)) ==
        series(compose(a, b), compose(a2, b2)));
}

TEST_CASE("composite measurements multiply their partitions") {
  const Measurement a("A", 2, {IndexSet{0, 1}});  // trivial
  const Measurement b("B", 2);                    // atomic
  const Measurement ab = compose_measurements(a, b);
  CHECK(ab.id() == "A*B");
  CHECK(ab.atomic_count() == 4);
  CHECK(ab.partition() ==
        std::vector<IndexSet>{IndexSet{0, 2}, IndexSet{1, 3}});

  const CompositeOutcome pairing{{"A", IndexSet{0, 1}}, {"B", IndexSet{1}}};
  CHECK(pairing.flatten(2) == IndexSet{1, 3});
}

TEST_CASE("inversion mirrors times about zero and turns series around") {
  const Sequence s("S", {atom(1, "L", 2, 0), atom(2, "M", 2, 1)}, {"g"});
  const Sequence r = invert(s);
  CHECK(r.events() ==
        std::vector<Event>{atom(-2, "M", 2, 1), atom(-1, "L", 2, 0)});
  CHECK(r.interactions() == std::vector<InteractionId>{"~g"});
  CHECK(invert(r) == s);  // involution

  const Sequence a("S", {atom(1, "L", 2, 0), atom(2, "M", 2, 1)},
                   {kIdentityInteraction});
  const Sequence b("S", {atom(2, "M", 2, 1), atom(3, "N", 2, 0)}, {"g"});
  CHECK(invert(series(a, b)) == series(invert(b), invert(a)));
}

TEST_CASE("interaction ids invert by toggling the adjoint marker") {
  CHECK(invert_interaction("g") == "~g");
  CHECK(invert_interaction("~g") == "g");
  CHECK(invert_interaction(kIdentityInteraction) == kIdentityInteraction);
}
