#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hetstream/profile.hpp"
#include "hetstream/schedule.hpp"

namespace hetstream {

struct Feasibility {
  bool feasible = false;
  double slack = 0.0;  // n0 + U_N/s - N
};

/// Bandwidth conservation: a lossless bounded-delay stream exists iff
/// n0 + U_N/s >= N (within kTolerance).
Feasibility feasibility_check(const BandwidthProfile& profile, const StreamConfig& stream);

/// 2(N-1)/u_n with u_n the smallest positive upload: the delay of the
/// scheduler that makes each peer responsible for a share of the chunks
/// proportional to its upload. Throws std::domain_error when infeasible.
double responsibility_delay_bound(const BandwidthProfile& profile, const StreamConfig& stream);

/// Lower bound on the stream delay forced by slow uploaders. `rank` is the
/// smallest k with n0*s + U_k >= N*s; some peer of rank >= k must upload at
/// least one copy, so some chunk waits at least 1/u_k. rank is 0 and the
/// floor 0 when the source alone covers the demand.
struct ForcedUploadFloor {
  std::size_t rank = 0;
  double floor = 0.0;
  double demand = 0.0;                // N*s
  double capacity_above_rank = 0.0;   // n0*s + U_{k-1}
};
ForcedUploadFloor forced_upload_floor(const BandwidthProfile& profile, const StreamConfig& stream);

struct AdversarialBound {
  BandwidthProfile profile;
  double floor = 0.0;           // (N-1)/(s(n0+V+1))
  double source_and_best = 0.0; // n0*s + u_1
  double demand = 0.0;          // N*s
  bool witness_holds = false;   // source_and_best < demand: peers of rank >= 2 must upload
};
AdversarialBound adversarial_lower_bound(std::size_t n, std::size_t n0, double excess, double rate);

/// Diagnostics of the two conditions of the group-rotation scheme for one period E.
struct GroupDiagnostics {
  std::size_t period = 0;
  double subsystem_delay = 0.0;       // single-chunk delay of peers E, 2E, ..., floor(N/E)E
  double window = 0.0;                // E/s
  bool non_overlapping = false;       // subsystem_delay <= E/s
  double worst_group_delay = 0.0;     // max intra delay over all E groups
  double mean_upload = 0.0;           // left side of the provisioning inequality
  double provisioning_threshold = 0.0;// s + E U_{E-1}/N, or s(1 + c/E) + E U_{E-1}/N
  bool provisioned = false;
  double delay_bound = 0.0;           // 2E/s
  double single_chunk_plus_window = 0.0;  // D(N) + E/s, reported for comparison only
  bool qualifies() const { return non_overlapping && provisioned; }
};

struct GroupPlan {
  std::size_t period = 1;                        // E
  std::vector<std::vector<std::size_t>> groups;  // groups[g-1]: ranks i with i = g (mod E), residue 0 -> E
  double delay_bound = 0.0;                      // 2E/s
  GroupDiagnostics diagnostics;
};

/// Ranks of group g (1..E) for a population of n peers.
std::vector<std::size_t> group_members(std::size_t n, std::size_t period, std::size_t group);

/// Evaluates both conditions for period E (1 <= E <= N).
GroupDiagnostics evaluate_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                       const DiffusionModel& model, std::size_t period);
/// Both conditions for period E, skipping the subsystem delay when the
/// provisioning inequality already fails.
bool group_period_qualifies(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                            std::size_t period);
/// Builds the plan for period E regardless of whether it qualifies.
GroupPlan make_group_plan(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                          std::size_t period);
/// Smallest qualifying E in 1..N, or nothing.
std::optional<GroupPlan> find_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                           const DiffusionModel& model);

/// Intra-then-inter schedule for chunks 0..horizon-1. Chunk i is injected at
/// i/s into group g = i (mod E); the group first diffuses it optimally among
/// itself, then its members serve every other peer in decreasing bandwidth
/// order, each stopping before it is needed for chunk i+E.
Schedule plan_intra_then_inter(const BandwidthProfile& profile, const StreamConfig& stream,
                               const DiffusionModel& model, const GroupPlan& plan, std::size_t horizon);

struct MeasuredDelay {
  GroupPlan plan;
  Schedule schedule;
  SimulationResult result;
  double max_delay() const { return result.max_delay; }
};

/// Plans and replays the group-rotation schedule. The horizon defaults to 3E
/// chunks. Throws std::domain_error when no period qualifies.
MeasuredDelay measured_stream_delay(const BandwidthProfile& profile, const StreamConfig& stream,
                                    const DiffusionModel& model, std::optional<std::size_t> horizon = std::nullopt);

}  // namespace hetstream
