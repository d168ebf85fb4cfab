#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hetstream/profile.hpp"

namespace hetstream {

/// Immutable list of sender ranks. Copies share storage, and a set may view a
/// contiguous slice of another one, so pooled transfers over large groups stay cheap.
class SenderSet {
 public:
  SenderSet() = default;
  SenderSet(std::initializer_list<std::size_t> ranks) : SenderSet(std::vector<std::size_t>(ranks)) {}
  explicit SenderSet(std::vector<std::size_t> ranks)
      : ranks_(std::make_shared<const std::vector<std::size_t>>(std::move(ranks))), count_(ranks_->size()) {}
  /// Ranks [offset, offset + count) of this set.
  SenderSet slice(std::size_t offset, std::size_t count) const;
  SenderSet prefix(std::size_t count) const { return slice(0, count); }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const std::size_t* begin() const { return ranks_ ? ranks_->data() + offset_ : nullptr; }
  const std::size_t* end() const { return begin() + count_; }
  std::size_t front() const { return *begin(); }
  std::size_t operator[](std::size_t i) const { return begin()[i]; }
  std::vector<std::size_t> to_vector() const { return {begin(), end()}; }
  /// Identity of the underlying storage; equal keys imply equal contents.
  std::pair<const void*, std::size_t> key() const { return {begin(), count_}; }

  bool operator==(const SenderSet& other) const;

 private:
  std::shared_ptr<const std::vector<std::size_t>> ranks_;
  std::size_t offset_ = 0;
  std::size_t count_ = 0;
};

/// One complete chunk copy. Peers are 1-based ranks. An event with no
/// senders is a source injection and is instantaneous (start == end).
struct TransferEvent {
  std::size_t chunk = 0;
  SenderSet senders;
  std::size_t receiver = 0;
  double start = 0.0;
  double end = 0.0;
  double rate = 0.0;  // chunks per second; rate * (end - start) == 1 for peer transfers

  bool is_injection() const { return senders.empty(); }
  bool operator==(const TransferEvent&) const = default;
};

/// Timed transfers for chunks 0..horizon-1, sorted by start time.
struct Schedule {
  std::size_t horizon = 0;
  std::vector<TransferEvent> events;
};

enum class ViolationKind {
  kUnsorted,        // events not ordered by start time
  kBadPeer,         // peer index out of range, or receiver among its senders
  kBadChunk,        // chunk id outside the horizon
  kBadInjection,    // injection off its creation instant, or more than n0 copies
  kIncompleteCopy,  // rate * duration differs from one chunk, or non-positive duration
  kSenderCount,     // wrong number of senders for the model
  kAtomicity,       // sender lacks a complete copy when the transfer starts
  kCapacity,        // a copy faster than its connection allows, or concurrent load above u
  kUndelivered,     // some peer never receives a chunk
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t chunk = 0;
  std::size_t peer = 0;
  double time = 0.0;
  std::string detail;
};

struct ChunkDelivery {
  std::size_t chunk = 0;
  double injected = 0.0;
  double completed = std::numeric_limits<double>::infinity();  // arrival of the N-th copy
  double delay() const { return completed - injected; }
};

struct SimulationResult {
  std::vector<ChunkDelivery> deliveries;
  double max_delay = 0.0;
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
};

/// Replays a schedule against the model's constraints: chunk atomicity,
/// per-peer upload capacity (one full-rate connection, c connections at u/c,
/// or a pooled share of u), and full delivery of every chunk. Violations are
/// collected, never dropped.
SimulationResult verify_schedule(const BandwidthProfile& profile, const StreamConfig& stream,
                                 const DiffusionModel& model, const Schedule& schedule);

}  // namespace hetstream
