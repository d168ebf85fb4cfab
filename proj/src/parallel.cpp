#include "hetstream/parallel.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hetstream {

bool ScenarioBounds::operator==(const ScenarioBounds& other) const {
  if (index != other.index || family != other.family || peers != other.peers || n0 != other.n0 || c != other.c ||
      dm != other.dm || d1 != other.d1 || dc != other.dc)
    return false;
  for (std::size_t k = 0; k < kInequalityCount; ++k) {
    const auto& a = tallies[k];
    const auto& b = other.tallies[k];
    if (a.evaluated != b.evaluated || a.violations != b.violations || a.first_violation_n != b.first_violation_n ||
        a.worst_excess != b.worst_excess)
      return false;
  }
  return true;
}

namespace {

ScenarioBounds bounds_for(const Scenario& scenario, std::size_t index, std::size_t c) {
  const auto report = evaluate_bounds(scenario.profile, scenario.n0, c, scenario.profile.size());
  ScenarioBounds out;
  out.index = index;
  out.family = scenario.family;
  out.peers = scenario.profile.size();
  out.n0 = scenario.n0;
  out.c = c;
  out.dm = report.rows.back().dm;
  out.d1 = report.rows.back().d1;
  out.dc = report.rows.back().dc;
  for (std::size_t k = 0; k < kInequalityCount; ++k) out.tallies[k] = report.tally(static_cast<Inequality>(k));
  return out;
}

OracleOutcome outcome_for(const OracleInstance& instance) {
  return OracleOutcome{exhaustive_min_delay(instance.uploads, instance.n0, instance.n, instance.model),
                       exact_greedy_delays(instance.uploads, instance.n0, instance.model, instance.n).back(),
                       exact_many_to_one_delays(instance.uploads, instance.n0, instance.n).back()};
}

}  // namespace

std::vector<ScenarioBounds> sweep_bounds_serial(std::span<const Scenario> scenarios, std::size_t c) {
  std::vector<ScenarioBounds> out;
  out.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) out.push_back(bounds_for(scenarios[i], i, c));
  return out;
}

std::vector<ScenarioBounds> sweep_bounds(std::span<const Scenario> scenarios, std::size_t c) {
  std::vector<ScenarioBounds> out(scenarios.size());
  const auto count = static_cast<long long>(scenarios.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = bounds_for(scenarios[k], k, c);
  }
  return out;
}

std::optional<std::size_t> smallest_group_period_serial(const BandwidthProfile& profile, const StreamConfig& stream,
                                                        const DiffusionModel& model) {
  for (std::size_t e = 1; e <= profile.size(); ++e) {
    if (group_period_qualifies(profile, stream, model, e)) return e;
  }
  return std::nullopt;
}

std::optional<std::size_t> smallest_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                                 const DiffusionModel& model) {
  stream.validate();
  const auto count = static_cast<long long>(profile.size());
  long long best = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic) reduction(min : best)
  for (long long e = 1; e <= count; ++e) {
    if (e < best && group_period_qualifies(profile, stream, model, static_cast<std::size_t>(e))) best = e;
  }
  if (best == std::numeric_limits<long long>::max()) return std::nullopt;
  return static_cast<std::size_t>(best);
}

std::vector<OracleOutcome> check_oracle_serial(std::span<const OracleInstance> instances) {
  std::vector<OracleOutcome> out;
  out.reserve(instances.size());
  for (const auto& instance : instances) out.push_back(outcome_for(instance));
  return out;
}

std::vector<OracleOutcome> check_oracle(std::span<const OracleInstance> instances) {
  std::vector<OracleOutcome> out(instances.size());
  const auto count = static_cast<long long>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = outcome_for(instances[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<OracleInstance> random_oracle_instances(std::size_t count, std::uint64_t seed, std::size_t max_peers,
                                                    std::size_t max_copies, const DiffusionModel& model) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(hi - lo + 1));
  };
  std::vector<OracleInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    OracleInstance instance;
    instance.model = model;
    const std::size_t peers = pick(1, max_peers);
    for (std::size_t i = 0; i < peers; ++i) {
      // numerators 0..8 over denominators 1..4; an occasional free-rider
      const auto num = static_cast<long long>(pick(0, 8));
      const auto den = static_cast<long long>(pick(1, 4));
      instance.uploads.emplace_back(num, den);
    }
    std::sort(instance.uploads.begin(), instance.uploads.end(), std::greater<>());
    if (instance.uploads.front() == 0) instance.uploads.front() = Rational(1);
    instance.n = pick(1, max_copies);
    instance.n0 = pick(1, std::min(instance.n, peers));
    out.push_back(std::move(instance));
  }
  return out;
}

}  // namespace hetstream
