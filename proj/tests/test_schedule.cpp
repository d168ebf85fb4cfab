#include "doctest.h"

#include <stdexcept>

#include "hetstream/schedule.hpp"

using namespace hetstream;

namespace {

const StreamConfig kStream{1.0, 1};

Schedule one_copy(double end) {
  Schedule s;
  s.horizon = 1;
  s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
  s.events.push_back(TransferEvent{0, {1}, 2, 0.0, end, 1.0 / end});
  return s;
}

bool has(const SimulationResult& r, ViolationKind kind) {
  for (const auto& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("empty schedule") {
  const auto r = verify_schedule(BandwidthProfile({1.0}), kStream, OneToOne{}, Schedule{});
  CHECK(r.valid());
  CHECK(r.max_delay == 0.0);
}

TEST_CASE("single copy at full rate") {
  const BandwidthProfile p({2.0, 1.0});
  const auto ok = verify_schedule(p, kStream, OneToOne{}, one_copy(0.5));
  CHECK(ok.valid());
  CHECK(ok.max_delay == 0.5);
  const auto fast = verify_schedule(p, kStream, OneToOne{}, one_copy(0.4));
  CHECK(has(fast, ViolationKind::kCapacity));
}

TEST_CASE("connections split the upload") {
  const BandwidthProfile p({2.0, 1.0, 1.0});
  Schedule s;
  s.horizon = 1;
  s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
  s.events.push_back(TransferEvent{0, {1}, 2, 0.0, 1.0, 1.0});
  s.events.push_back(TransferEvent{0, {1}, 3, 0.0, 1.0, 1.0});
  CHECK(verify_schedule(p, kStream, OneToSome{2}, s).valid());
  CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kCapacity));
}

TEST_CASE("atomicity") {
  const BandwidthProfile p({1.0, 1.0, 1.0});
  Schedule s;
  s.horizon = 1;
  s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
  s.events.push_back(TransferEvent{0, {1}, 2, 0.0, 1.0, 1.0});
  s.events.push_back(TransferEvent{0, {2}, 3, 0.5, 1.5, 1.0});
  CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kAtomicity));
}

TEST_CASE("pooled transfers") {
  const BandwidthProfile p({1.0, 1.0, 1.0});
  Schedule s;
  s.horizon = 1;
  s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
  s.events.push_back(TransferEvent{0, {1}, 2, 0.0, 1.0, 1.0});
  s.events.push_back(TransferEvent{0, {1, 2}, 3, 1.0, 1.5, 2.0});
  const auto r = verify_schedule(p, kStream, ManyToOne{}, s);
  CHECK(r.valid());
  CHECK(r.max_delay == 1.5);
  CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kSenderCount));
}

TEST_CASE("structural violations") {
  const BandwidthProfile p({1.0, 1.0});
  SUBCASE("undelivered") {
    Schedule s;
    s.horizon = 1;
    s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kUndelivered));
  }
  SUBCASE("injection off its instant") {
    auto s = one_copy(1.0);
    s.events[0].start = s.events[0].end = 0.25;
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kBadInjection));
  }
  SUBCASE("too many injections") {
    auto s = one_copy(1.0);
    s.events.insert(s.events.begin(), TransferEvent{0, {}, 2, 0.0, 0.0, 0.0});
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kBadInjection));
  }
  SUBCASE("partial copy") {
    auto s = one_copy(1.0);
    s.events[1].rate = 0.5;
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kIncompleteCopy));
  }
  SUBCASE("unsorted") {
    auto s = one_copy(1.0);
    s.events.push_back(TransferEvent{0, {}, 2, 0.0, 0.0, 0.0});
    s.events.back().chunk = 0;
    std::swap(s.events[0], s.events[1]);
    s.events[0].start = 0.5;
    s.events[0].end = 1.5;
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kUnsorted));
  }
  SUBCASE("bad peers and chunks") {
    auto s = one_copy(1.0);
    s.events[1].senders = {2};
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kBadPeer));
    s.events[1].senders = {7};
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kBadPeer));
    s.events[1].chunk = 3;
    CHECK(has(verify_schedule(p, kStream, OneToOne{}, s), ViolationKind::kBadChunk));
  }
}

TEST_CASE("sender sets share storage") {
  const SenderSet all{4, 5, 6, 7};
  const auto tail = all.slice(1, 3);
  CHECK(tail.size() == 3);
  CHECK(tail.front() == 5);
  CHECK(tail == SenderSet{5, 6, 7});
  CHECK(all.prefix(2).to_vector() == std::vector<std::size_t>{4, 5});
  CHECK_THROWS_AS(all.slice(3, 2), std::out_of_range);
  CHECK(SenderSet{}.empty());
}
