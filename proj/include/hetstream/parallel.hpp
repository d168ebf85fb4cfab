#pragma once

// Batch kernels over independent scenarios. Each kernel has an OpenMP version
// and a serial reference; both return identical results in identical order.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hetstream/bounds.hpp"
#include "hetstream/distributions.hpp"
#include "hetstream/oracle.hpp"
#include "hetstream/stream.hpp"

namespace hetstream {

struct ScenarioBounds {
  std::size_t index = 0;
  ProfileFamily family = ProfileFamily::kHomogeneous;
  std::size_t peers = 0;
  std::size_t n0 = 1;
  std::size_t c = 1;
  double dm = 0.0;  // D_m(N)
  double d1 = 0.0;
  double dc = 0.0;
  std::array<ViolationTally, kInequalityCount> tallies{};

  bool operator==(const ScenarioBounds& other) const;
};

/// Evaluates every inequality for n = 1..N on each scenario.
std::vector<ScenarioBounds> sweep_bounds(std::span<const Scenario> scenarios, std::size_t c);
std::vector<ScenarioBounds> sweep_bounds_serial(std::span<const Scenario> scenarios, std::size_t c);

/// Smallest qualifying period, candidates evaluated concurrently.
std::optional<std::size_t> smallest_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                                 const DiffusionModel& model);
std::optional<std::size_t> smallest_group_period_serial(const BandwidthProfile& profile, const StreamConfig& stream,
                                                        const DiffusionModel& model);

struct OracleInstance {
  std::vector<Rational> uploads;  // sorted non-increasing
  std::size_t n0 = 1;
  std::size_t n = 1;
  DiffusionModel model = OneToOne{};
};

struct OracleOutcome {
  Rational exhaustive;
  Rational greedy;
  Rational many_to_one;
  bool matches() const { return exhaustive == greedy; }
  bool operator==(const OracleOutcome&) const = default;
};

/// Compares the greedy curve against exhaustive search on every instance.
std::vector<OracleOutcome> check_oracle(std::span<const OracleInstance> instances);
std::vector<OracleOutcome> check_oracle_serial(std::span<const OracleInstance> instances);

/// Seeded tiny instances with small-denominator rational uploads.
std::vector<OracleInstance> random_oracle_instances(std::size_t count, std::uint64_t seed, std::size_t max_peers,
                                                    std::size_t max_copies, const DiffusionModel& model);

}  // namespace hetstream
