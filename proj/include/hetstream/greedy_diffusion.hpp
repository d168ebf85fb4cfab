#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace hetstream {

/// One copy produced by the greedy single-chunk schedule. Peers are 1-based
/// ranks; `slot` is the sender connection (0..c-1) carrying the copy.
template <class T>
struct GreedyTransfer {
  std::size_t sender;
  std::size_t slot;
  std::size_t receiver;
  T start;
  T end;
};

/// Exact minimal delays D(1..n_max) for the one-to-c model (c = 1 gives
/// one-to-one) from the finish-time greedy.
///
/// Every capable peer keeps each of its c connections busy; the k-th copy on
/// a connection of peer i completes at D(i) + k*c/u_i. The earliest pending
/// completion is always handed to the best peer still missing the chunk, and
/// only that single occurrence is consumed. Equal completion times resolve by
/// ascending sender rank. Ranks beyond `uploads.size()` are zero-upload sinks.
///
/// `uploads` must be sorted non-increasing. When `transfers` is non-null the
/// realized copies (sender, connection, receiver, interval) are appended.
template <class T>
std::vector<T> greedy_delays(std::span<const T> uploads, std::size_t n0, std::size_t c, std::size_t n_max,
                             std::vector<GreedyTransfer<T>>* transfers = nullptr) {
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  if (c < 1) throw std::invalid_argument("c must be at least 1");

  struct Pending {
    T time;
    std::size_t sender;  // 0 marks an initial copy
    std::size_t slot;
    std::size_t k;
    bool operator>(const Pending& other) const {
      if (time != other.time) return time > other.time;
      if (sender != other.sender) return sender > other.sender;
      return slot > other.slot;
    }
  };
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;
  for (std::size_t j = 0; j < n0; ++j) pending.push(Pending{T(0), 0, j, 0});

  const T width(static_cast<long long>(c));
  std::vector<T> delays;
  delays.reserve(n_max);
  for (std::size_t i = 1; i <= n_max; ++i) {
    if (pending.empty()) {
      if constexpr (std::numeric_limits<T>::has_infinity) {
        delays.resize(n_max, std::numeric_limits<T>::infinity());
        return delays;
      } else {
        throw std::domain_error("no upload capacity left to create further copies");
      }
    }
    const Pending next = pending.top();
    pending.pop();
    delays.push_back(next.time);
    if (next.sender != 0) {
      const T& u = uploads[next.sender - 1];
      if (transfers != nullptr) {
        const T started = delays[next.sender - 1] + T(static_cast<long long>(next.k - 1)) * width / u;
        transfers->push_back(GreedyTransfer<T>{next.sender, next.slot, i, started, next.time});
      }
      const T k_next(static_cast<long long>(next.k + 1));
      pending.push(Pending{delays[next.sender - 1] + k_next * width / u, next.sender, next.slot, next.k + 1});
    }
    if (i <= uploads.size() && uploads[i - 1] > T(0)) {
      const T first = next.time + width / uploads[i - 1];
      for (std::size_t slot = 0; slot < c; ++slot) pending.push(Pending{first, i, slot, 1});
    }
  }
  return delays;
}

}  // namespace hetstream
