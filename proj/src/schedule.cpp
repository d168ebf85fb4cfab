#include "hetstream/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hetstream {

SenderSet SenderSet::slice(std::size_t offset, std::size_t count) const {
  if (offset > count_ || count > count_ - offset) throw std::out_of_range("slice outside the sender set");
  SenderSet out = *this;
  out.offset_ += offset;
  out.count_ = count;
  return out;
}

bool SenderSet::operator==(const SenderSet& other) const {
  return key() == other.key() || std::equal(begin(), end(), other.begin(), other.end());
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnsorted: return "unsorted";
    case ViolationKind::kBadPeer: return "bad_peer";
    case ViolationKind::kBadChunk: return "bad_chunk";
    case ViolationKind::kBadInjection: return "bad_injection";
    case ViolationKind::kIncompleteCopy: return "incomplete_copy";
    case ViolationKind::kSenderCount: return "sender_count";
    case ViolationKind::kAtomicity: return "atomicity";
    case ViolationKind::kCapacity: return "capacity";
    case ViolationKind::kUndelivered: return "undelivered";
  }
  return "unknown";
}

namespace {

double slack(double t) { return kTolerance * std::max(1.0, std::abs(t)); }

struct Load {
  double start;
  double end;
  double share;  // fraction of the peer's upload in use
};

}  // namespace

SimulationResult verify_schedule(const BandwidthProfile& profile, const StreamConfig& stream,
                                 const DiffusionModel& model, const Schedule& schedule) {
  stream.validate();
  SimulationResult result;
  const std::size_t peers = profile.size();
  const std::size_t horizon = schedule.horizon;
  const bool pooled = is_many_to_one(model);
  const std::size_t width = pooled ? 1 : connections(model);
  const double inf = std::numeric_limits<double>::infinity();

  auto report = [&](ViolationKind kind, const TransferEvent& e, std::size_t peer, double time, std::string detail) {
    result.violations.push_back(Violation{kind, e.chunk, peer, time, std::move(detail)});
  };

  // received[chunk][rank - 1] = first instant the peer holds a complete copy
  std::vector<std::vector<double>> received(horizon, std::vector<double>(peers, inf));
  std::vector<std::size_t> injections(horizon, 0);
  std::vector<std::vector<Load>> loads(peers);
  struct Pool {
    double upload = 0.0;
    std::size_t out_of_range = 0;
    bool repeated = false;
    std::vector<std::size_t> sorted;
  };
  // Busy intervals are first accumulated per sender set and only handed to the
  // individual peers when the set's run of back-to-back copies breaks.
  struct Run {
    SenderSet senders;
    Load load;
  };
  std::map<std::pair<const void*, std::size_t>, Run> runs;
  std::map<std::pair<const void*, std::size_t>, Pool> pools;
  std::vector<const TransferEvent*> usable;
  usable.reserve(schedule.events.size());

  auto flush = [&](const Run& run) {
    for (std::size_t s : run.senders) {
      auto& mine = loads[s - 1];
      // back-to-back copies at the same share form one busy interval
      if (!mine.empty() && mine.back().share == run.load.share &&
          std::abs(mine.back().end - run.load.start) <= slack(run.load.start)) {
        mine.back().end = std::max(mine.back().end, run.load.end);
      } else {
        mine.push_back(run.load);
      }
    }
  };

  double previous_start = -inf;
  for (const auto& e : schedule.events) {
    if (e.start + slack(e.start) < previous_start) report(ViolationKind::kUnsorted, e, 0, e.start, "");
    previous_start = std::max(previous_start, e.start);

    if (e.chunk >= horizon) {
      report(ViolationKind::kBadChunk, e, 0, e.start, "chunk beyond horizon");
      continue;
    }
    if (e.receiver < 1 || e.receiver > peers) {
      report(ViolationKind::kBadPeer, e, e.receiver, e.start, "receiver out of range");
      continue;
    }
    const double created = static_cast<double>(e.chunk) / stream.rate;
    if (e.is_injection()) {
      if (std::abs(e.start - created) > slack(created) || std::abs(e.end - e.start) > slack(e.start))
        report(ViolationKind::kBadInjection, e, e.receiver, e.start, "injection off the creation instant");
      if (++injections[e.chunk] > stream.n0)
        report(ViolationKind::kBadInjection, e, e.receiver, e.start, "more than n0 injected copies");
      auto& slot = received[e.chunk][e.receiver - 1];
      slot = std::min(slot, e.end);
      continue;
    }

    // Range and repetition depend only on the sender set; large pools recur across events.
    auto found = pools.find(e.senders.key());
    if (found == pools.end()) {
      Pool pool;
      std::vector<std::size_t> distinct = e.senders.to_vector();
      std::sort(distinct.begin(), distinct.end());
      pool.repeated = std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end();
      for (std::size_t s : distinct) {
        if (s < 1 || s > peers) {
          pool.out_of_range = s;
          break;
        }
        pool.upload += profile.upload(s);
      }
      pool.sorted = std::move(distinct);
      found = pools.emplace(e.senders.key(), pool).first;
    }
    const Pool& pool = found->second;
    const double pooled_upload = pool.upload;

    bool ok = true;
    if (pool.out_of_range != 0) {
      report(ViolationKind::kBadPeer, e, pool.out_of_range, e.start, "sender out of range");
      ok = false;
    }
    if (std::binary_search(pool.sorted.begin(), pool.sorted.end(), e.receiver)) {
      report(ViolationKind::kBadPeer, e, e.receiver, e.start, "receiver among its senders");
      ok = false;
    }
    if (pool.repeated) {
      report(ViolationKind::kBadPeer, e, 0, e.start, "repeated sender");
      ok = false;
    }
    if (!pooled && e.senders.size() != 1) {
      report(ViolationKind::kSenderCount, e, 0, e.start, "model allows a single sender per copy");
      ok = false;
    }
    const double duration = e.end - e.start;
    if (!(duration > 0.0) || std::abs(e.rate * duration - 1.0) > 1e-9) {
      report(ViolationKind::kIncompleteCopy, e, e.receiver, e.start, "rate * duration must equal one chunk");
      ok = false;
    }
    if (!ok) continue;

    const double capacity = pooled ? pooled_upload : profile.upload(e.senders.front()) / static_cast<double>(width);
    if (e.rate > capacity * (1.0 + kTolerance) + kTolerance) {
      std::ostringstream msg;
      msg << "rate " << e.rate << " exceeds " << capacity;
      report(ViolationKind::kCapacity, e, e.senders.front(), e.start, msg.str());
    }
    const double share = pooled ? e.rate / pooled_upload : 1.0 / static_cast<double>(width);
    auto [run, fresh] = runs.try_emplace(e.senders.key(), Run{e.senders, Load{e.start, e.end, share}});
    if (!fresh) {
      auto& busy = run->second.load;
      if (busy.share == share && std::abs(busy.end - e.start) <= slack(e.start)) {
        busy.end = std::max(busy.end, e.end);
      } else {
        flush(run->second);
        run->second = Run{e.senders, Load{e.start, e.end, share}};
      }
    }
    auto& slot = received[e.chunk][e.receiver - 1];
    slot = std::min(slot, e.end);
    usable.push_back(&e);
  }

  for (auto& [key, run] : runs) flush(run);

  // latest[(set, chunk)] = the sender that completes its copy last
  std::map<std::pair<std::pair<const void*, std::size_t>, std::size_t>, std::size_t> latest;
  for (const auto* e : usable) {
    auto [it, fresh] = latest.try_emplace({e->senders.key(), e->chunk}, 0);
    if (fresh) {
      double last = -inf;
      for (std::size_t s : e->senders) {
        if (received[e->chunk][s - 1] > last) {
          last = received[e->chunk][s - 1];
          it->second = s;
        }
      }
    }
    const std::size_t s = it->second;
    if (received[e->chunk][s - 1] > e->start + slack(e->start))
      report(ViolationKind::kAtomicity, *e, s, e->start, "sender has no complete copy yet");
  }

  for (std::size_t p = 0; p < peers; ++p) {
    // sweep: an interval ending at t frees capacity for one starting at t
    std::vector<std::pair<double, double>> marks;
    marks.reserve(2 * loads[p].size());
    for (const auto& l : loads[p]) {
      marks.emplace_back(l.start, l.share);
      marks.emplace_back(l.end - slack(l.end), -l.share);
    }
    std::sort(marks.begin(), marks.end());
    double in_use = 0.0;
    for (const auto& [time, delta] : marks) {
      in_use += delta;
      if (in_use > 1.0 + 1e-6) {
        std::ostringstream msg;
        msg << "upload share " << in_use << " exceeds capacity";
        result.violations.push_back(Violation{ViolationKind::kCapacity, 0, p + 1, time, msg.str()});
        break;
      }
    }
  }

  result.deliveries.reserve(horizon);
  for (std::size_t chunk = 0; chunk < horizon; ++chunk) {
    ChunkDelivery d;
    d.chunk = chunk;
    d.injected = static_cast<double>(chunk) / stream.rate;
    d.completed = *std::max_element(received[chunk].begin(), received[chunk].end());
    if (std::isinf(d.completed)) {
      const auto missing = std::count_if(received[chunk].begin(), received[chunk].end(),
                                         [](double t) { return std::isinf(t); });
      result.violations.push_back(Violation{ViolationKind::kUndelivered, chunk, 0, d.injected,
                                            std::to_string(missing) + " peers never receive the chunk"});
    }
    result.max_delay = std::max(result.max_delay, d.delay());
    result.deliveries.push_back(d);
  }
  return result;
}

}  // namespace hetstream
