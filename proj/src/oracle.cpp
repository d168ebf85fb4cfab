#include "hetstream/oracle.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "hetstream/greedy_diffusion.hpp"

namespace hetstream {

std::vector<Rational> exact_uploads(const BandwidthProfile& profile) {
  std::vector<Rational> out;
  out.reserve(profile.size());
  for (double u : profile.uploads()) out.emplace_back(u);
  return out;
}

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(std::vector<Rational> uploads, std::size_t target, std::size_t connections)
      : uploads_(std::move(uploads)), target_(target), connections_(connections) {}

  Rational run(SearchNode start) {
    explore(start);
    if (!best_) throw std::domain_error("no schedule reaches the requested number of copies");
    return *best_;
  }

 private:
  std::size_t peers() const { return uploads_.size(); }
  bool holds(const SearchNode& node, std::size_t rank) const { return (node.capable >> rank) & 1u; }

  static std::size_t popcount(std::uint32_t bits) {
    std::size_t count = 0;
    for (; bits != 0; bits &= bits - 1) ++count;
    return count;
  }

  bool pruned(const Rational& instant) const { return best_ && instant >= *best_; }

  void explore(SearchNode& node) {
    if (popcount(node.capable) >= target_) {
      if (!best_ || node.elapsed < *best_) best_ = node.elapsed;
      return;
    }
    if (pruned(node.elapsed)) return;
    assign(node, 0);
  }

  // Chooses the copies started by sender `rank` and every later sender.
  void assign(SearchNode& node, std::size_t rank) {
    if (rank == peers()) {
      advance(node);
      return;
    }
    if (!holds(node, rank) || uploads_[rank] <= 0) {
      assign(node, rank + 1);
      return;
    }
    const auto busy = static_cast<std::size_t>(std::count_if(node.in_flight.begin(), node.in_flight.end(),
                                                             [&](const auto& t) { return t.sender == rank; }));
    const std::size_t free_slots = connections_ - busy;
    const auto groups = receiver_groups(node);
    choose(node, rank, groups, 0, free_slots);
  }

  // Available receivers grouped by equal upload, each group listed in rank order.
  std::vector<std::vector<std::size_t>> receiver_groups(const SearchNode& node) const {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < peers(); ++r) {
      if (holds(node, r)) continue;
      const bool targeted = std::any_of(node.in_flight.begin(), node.in_flight.end(),
                                        [&](const auto& t) { return t.receiver == r; });
      if (targeted) continue;
      if (!groups.empty() && uploads_[groups.back().front()] == uploads_[r]) {
        groups.back().push_back(r);
      } else {
        groups.push_back({r});
      }
    }
    return groups;
  }

  void choose(SearchNode& node, std::size_t rank, const std::vector<std::vector<std::size_t>>& groups,
              std::size_t group, std::size_t slots_left) {
    if (group == groups.size() || slots_left == 0) {
      assign(node, rank + 1);
      return;
    }
    const Rational finish = node.elapsed + Rational(static_cast<long long>(connections_)) / uploads_[rank];
    const std::size_t most = std::min(slots_left, groups[group].size());
    for (std::size_t take = 0; take <= most; ++take) {
      for (std::size_t j = 0; j < take; ++j) node.in_flight.push_back({rank, groups[group][j], finish});
      choose(node, rank, groups, group + 1, slots_left - take);
      node.in_flight.resize(node.in_flight.size() - take);
    }
  }

  void advance(SearchNode& node) {
    if (node.in_flight.empty()) return;
    Rational next = node.in_flight.front().finish;
    for (const auto& t : node.in_flight) next = std::min(next, t.finish);
    if (pruned(next)) return;
    SearchNode child;
    child.capable = node.capable;
    child.elapsed = next;
    for (const auto& t : node.in_flight) {
      if (t.finish == next) {
        child.capable |= 1u << t.receiver;
      } else {
        child.in_flight.push_back(t);
      }
    }
    explore(child);
  }

  std::vector<Rational> uploads_;
  std::size_t target_;
  std::size_t connections_;
  std::optional<Rational> best_;
};

}  // namespace

Rational exhaustive_min_delay(const std::vector<Rational>& uploads, std::size_t n0, std::size_t n,
                              const DiffusionModel& model) {
  if (is_many_to_one(model)) throw std::domain_error("the oracle covers one-to-one and one-to-c only");
  const std::size_t c = connections(model);
  if (uploads.empty() || uploads.size() > kOracleMaxPeers || n > kOracleMaxCopies || c > kOracleMaxConnections)
    throw std::domain_error("instance too large for exhaustive search");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  if (!std::is_sorted(uploads.begin(), uploads.end(), std::greater<>()))
    throw std::invalid_argument("uploads must be sorted non-increasing");
  if (n <= n0) return Rational(0);

  // dummy zero-upload sinks stand in for copies beyond the population
  std::vector<Rational> padded = uploads;
  padded.resize(std::max(uploads.size(), n), Rational(0));
  SearchNode start;
  for (std::size_t r = 0; r < std::min(n0, padded.size()); ++r) start.capable |= 1u << r;
  return ExhaustiveSearch(std::move(padded), n, c).run(std::move(start));
}

Rational exhaustive_min_delay(const BandwidthProfile& profile, std::size_t n0, std::size_t n,
                              const DiffusionModel& model) {
  return exhaustive_min_delay(exact_uploads(profile), n0, n, model);
}

std::vector<Rational> exact_greedy_delays(const std::vector<Rational>& uploads, std::size_t n0,
                                          const DiffusionModel& model, std::size_t n_max) {
  return greedy_delays<Rational>(uploads, n0, connections(model), n_max);
}

std::vector<Rational> exact_many_to_one_delays(const std::vector<Rational>& uploads, std::size_t n0,
                                               std::size_t n_max) {
  std::vector<Rational> prefix(uploads.size() + 1, Rational(0));
  for (std::size_t i = 0; i < uploads.size(); ++i) prefix[i + 1] = prefix[i] + uploads[i];
  std::vector<Rational> delays(n_max, Rational(0));
  Rational elapsed = 0;
  for (std::size_t n = n0 + 1; n <= n_max; ++n) {
    elapsed += Rational(1) / prefix[std::min(n - 1, uploads.size())];
    delays[n - 1] = elapsed;
  }
  return delays;
}

}  // namespace hetstream
