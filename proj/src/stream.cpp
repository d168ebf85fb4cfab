#include "hetstream/stream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "hetstream/greedy_diffusion.hpp"
#include "hetstream/single_chunk.hpp"

namespace hetstream {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double as_double(std::size_t v) { return static_cast<double>(v); }

// Single-chunk delay of an arbitrary sorted upload list with n0 copies at its best peers.
double subsystem_delay(const std::vector<double>& uploads, const DiffusionModel& model, std::size_t n0) {
  if (uploads.size() <= n0) return 0.0;
  if (!(uploads.front() > 0.0)) return kInfinity;
  return delay_curve(BandwidthProfile(uploads), model, n0, uploads.size()).final_delay();
}

std::vector<double> uploads_of(const BandwidthProfile& profile, const std::vector<std::size_t>& ranks) {
  std::vector<double> out;
  out.reserve(ranks.size());
  for (std::size_t r : ranks) out.push_back(profile.upload(r));
  return out;
}

double provisioning_threshold(const BandwidthProfile& profile, const StreamConfig& stream,
                              const DiffusionModel& model, std::size_t period) {
  const double e = as_double(period);
  const double head = e * profile.cumulative(period - 1) / as_double(profile.size());
  if (is_many_to_one(model)) return stream.rate + head;
  return stream.rate * (1.0 + as_double(connections(model)) / e) + head;
}

// The two qualifying conditions only; cheap enough to run for every candidate E.
GroupDiagnostics conditions(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                            std::size_t period, bool provisioning_first) {
  GroupDiagnostics d;
  d.period = period;
  d.window = as_double(period) / stream.rate;
  d.delay_bound = 2.0 * d.window;
  d.mean_upload = profile.mean();
  d.provisioning_threshold = provisioning_threshold(profile, stream, model, period);
  d.provisioned = d.mean_upload >= d.provisioning_threshold - kTolerance;
  if (provisioning_first && !d.provisioned) {
    d.subsystem_delay = kInfinity;
    return d;
  }
  d.subsystem_delay = subsystem_delay(uploads_of(profile, group_members(profile.size(), period, period)), model,
                                      stream.n0);
  d.non_overlapping = d.subsystem_delay <= d.window + kTolerance;
  return d;
}

void check_period(const BandwidthProfile& profile, std::size_t period) {
  if (period < 1 || period > profile.size()) throw std::domain_error("period E must lie in 1..N");
}

}  // namespace

Feasibility feasibility_check(const BandwidthProfile& profile, const StreamConfig& stream) {
  stream.validate();
  const double slack = as_double(stream.n0) + profile.total() / stream.rate - as_double(profile.size());
  return {slack >= -kTolerance, slack};
}

double responsibility_delay_bound(const BandwidthProfile& profile, const StreamConfig& stream) {
  if (!feasibility_check(profile, stream).feasible) throw std::domain_error("stream is not feasible");
  return 2.0 * (as_double(profile.size()) - 1.0) / profile.min_positive_upload();
}

ForcedUploadFloor forced_upload_floor(const BandwidthProfile& profile, const StreamConfig& stream) {
  stream.validate();
  ForcedUploadFloor f;
  f.demand = as_double(profile.size()) * stream.rate;
  const double source = as_double(stream.n0) * stream.rate;
  f.capacity_above_rank = source;
  if (source >= f.demand - kTolerance) return f;
  for (std::size_t k = 1; k <= profile.size(); ++k) {
    if (source + profile.cumulative(k) >= f.demand - kTolerance) {
      f.rank = k;
      f.floor = 1.0 / profile.upload(k);
      f.capacity_above_rank = source + profile.cumulative(k - 1);
      return f;
    }
  }
  f.floor = kInfinity;  // infeasible: no finite delay
  f.capacity_above_rank = source + profile.total();
  return f;
}

AdversarialBound adversarial_lower_bound(std::size_t n, std::size_t n0, double excess, double rate) {
  auto profile = generate_adversarial(n, n0, excess, rate);
  const double nd = as_double(n);
  const double n0d = as_double(n0);
  AdversarialBound b{profile, (nd - 1.0) / (rate * (n0d + excess + 1.0)), n0d * rate + profile.upload(1), nd * rate,
                     false};
  b.witness_holds = b.source_and_best < b.demand;
  return b;
}

std::vector<std::size_t> group_members(std::size_t n, std::size_t period, std::size_t group) {
  if (period < 1 || group < 1 || group > period) throw std::domain_error("group index must lie in 1..E");
  std::vector<std::size_t> ranks;
  for (std::size_t r = group; r <= n; r += period) ranks.push_back(r);
  return ranks;
}

GroupDiagnostics evaluate_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                       const DiffusionModel& model, std::size_t period) {
  stream.validate();
  check_period(profile, period);
  auto d = conditions(profile, stream, model, period, false);
  for (std::size_t g = 1; g <= period; ++g) {
    const double delay = subsystem_delay(uploads_of(profile, group_members(profile.size(), period, g)), model,
                                         stream.n0);
    d.worst_group_delay = std::max(d.worst_group_delay, delay);
  }
  d.single_chunk_plus_window =
      delay_curve(profile, model, stream.n0, profile.size()).final_delay() + d.window;
  return d;
}

GroupPlan make_group_plan(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                          std::size_t period) {
  GroupPlan plan;
  plan.period = period;
  plan.diagnostics = evaluate_group_period(profile, stream, model, period);
  plan.delay_bound = plan.diagnostics.delay_bound;
  for (std::size_t g = 1; g <= period; ++g) plan.groups.push_back(group_members(profile.size(), period, g));
  return plan;
}

bool group_period_qualifies(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                            std::size_t period) {
  check_period(profile, period);
  return conditions(profile, stream, model, period, true).qualifies();
}

std::optional<GroupPlan> find_group_period(const BandwidthProfile& profile, const StreamConfig& stream,
                                           const DiffusionModel& model) {
  stream.validate();
  for (std::size_t e = 1; e <= profile.size(); ++e) {
    if (group_period_qualifies(profile, stream, model, e)) return make_group_plan(profile, stream, model, e);
  }
  return std::nullopt;
}

namespace {

// Relative timing of one group's intra-diffusion; identical for every chunk
// the group receives.
struct GroupTemplate {
  std::vector<std::size_t> members;
  std::vector<std::size_t> extras;              // other-group peers injected when n0 > |G|
  std::vector<double> capable_at;               // per member
  std::vector<std::vector<double>> slot_free;   // per member, per connection
  std::vector<TransferEvent> intra;             // chunk-relative times
  std::vector<std::size_t> outsiders;           // inter receivers, ascending rank
  SenderSet pool;                               // members with positive upload, pooled model only
};

GroupTemplate build_template(const BandwidthProfile& profile, const StreamConfig& stream, const DiffusionModel& model,
                             const GroupPlan& plan, std::size_t g) {
  GroupTemplate t;
  t.members = plan.groups[g];
  const std::size_t size = t.members.size();
  const std::size_t seeded = std::min(stream.n0, size);
  const std::size_t period = plan.period;

  // Surplus injected copies go round-robin to the best remaining peers of the other groups.
  if (stream.n0 > size) {
    std::vector<std::size_t> cursor(period, 0);
    std::size_t wanted = std::min(stream.n0, profile.size()) - size;
    for (std::size_t step = 1; wanted > 0; step = step % (period - 1) + 1) {
      const std::size_t other = (g + step) % period;
      if (cursor[other] < plan.groups[other].size()) {
        t.extras.push_back(plan.groups[other][cursor[other]++]);
        --wanted;
      }
    }
  }

  const auto uploads = uploads_of(profile, t.members);
  t.capable_at.assign(size, kInfinity);
  for (std::size_t j = 0; j < seeded; ++j) t.capable_at[j] = 0.0;

  if (is_many_to_one(model)) {
    std::vector<std::size_t> uploaders;
    for (std::size_t j = 0; j < size; ++j) {
      if (uploads[j] > 0.0) uploaders.push_back(t.members[j]);
    }
    t.pool = SenderSet(std::move(uploaders));
    double now = 0.0;
    double pool = 0.0;
    std::size_t pooled = 0;
    for (std::size_t j = 0; j < size; ++j) {
      if (j >= seeded) {
        if (!(pool > 0.0)) break;
        const double finish = now + 1.0 / pool;
        t.intra.push_back(TransferEvent{0, t.pool.prefix(pooled), t.members[j], now, finish, 1.0 / (finish - now)});
        now = finish;
        t.capable_at[j] = now;
      }
      if (uploads[j] > 0.0) {
        pool += uploads[j];
        ++pooled;
      }
    }
    for (std::size_t j = 0; j < size; ++j) t.slot_free.push_back({now});
  } else {
    const std::size_t width = connections(model);
    std::vector<GreedyTransfer<double>> copies;
    const auto delays = greedy_delays<double>(uploads, seeded, width, size, &copies);
    for (std::size_t j = 0; j < size; ++j) {
      t.capable_at[j] = delays[j];
      t.slot_free.emplace_back(width, delays[j]);
    }
    for (const auto& c : copies) {
      const TransferEvent e{0, {t.members[c.sender - 1]}, t.members[c.receiver - 1], c.start, c.end,
                            1.0 / (c.end - c.start)};
      t.intra.push_back(e);
      auto& free_at = t.slot_free[c.sender - 1][c.slot];
      free_at = std::max(free_at, c.end);
    }
  }

  std::vector<bool> holds(profile.size() + 1, false);
  for (std::size_t r : t.members) holds[r] = true;
  for (std::size_t r : t.extras) holds[r] = true;
  for (std::size_t r = 1; r <= profile.size(); ++r) {
    if (!holds[r]) t.outsiders.push_back(r);
  }
  return t;
}

void check_plan(const BandwidthProfile& profile, const GroupPlan& plan) {
  check_period(profile, plan.period);
  if (plan.groups.size() != plan.period) throw std::domain_error("plan does not match the profile");
  for (std::size_t g = 1; g <= plan.period; ++g) {
    if (plan.groups[g - 1] != group_members(profile.size(), plan.period, g))
      throw std::domain_error("plan does not match the profile");
  }
}

}  // namespace

Schedule plan_intra_then_inter(const BandwidthProfile& profile, const StreamConfig& stream,
                               const DiffusionModel& model, const GroupPlan& plan, std::size_t horizon) {
  stream.validate();
  check_plan(profile, plan);
  Schedule schedule;
  schedule.horizon = horizon;
  if (horizon == 0) return schedule;

  const std::size_t period = plan.period;
  std::vector<GroupTemplate> templates;
  for (std::size_t g = 0; g < period; ++g) templates.push_back(build_template(profile, stream, model, plan, g));

  for (std::size_t chunk = 0; chunk < horizon; ++chunk) {
    // chunk i goes to group g = i mod E, residue 0 being group E
    const std::size_t g = (chunk % period + period - 1) % period;
    const auto& t = templates[g];
    const double injected = as_double(chunk) / stream.rate;
    const double next_turn = as_double(chunk + period) / stream.rate;

    const std::size_t seeded = std::min(stream.n0, t.members.size());
    for (std::size_t j = 0; j < seeded; ++j)
      schedule.events.push_back(TransferEvent{chunk, {}, t.members[j], injected, injected, 0.0});
    for (std::size_t r : t.extras) schedule.events.push_back(TransferEvent{chunk, {}, r, injected, injected, 0.0});

    for (const auto& e : t.intra) {
      const double start = injected + e.start;
      const double end = injected + e.end;
      schedule.events.push_back(TransferEvent{chunk, e.senders, e.receiver, start, end, 1.0 / (end - start)});
    }

    auto deadline = [&](std::size_t member) { return next_turn + t.capable_at[member]; };
    std::size_t served = 0;

    if (is_many_to_one(model)) {
      // Pooled members join in rank order, so capable_at and hence the
      // deadlines are non-decreasing along the pool: members leave from its head.
      std::vector<std::size_t> pool_index;
      std::vector<double> suffix;
      for (std::size_t j = 0; j < t.members.size(); ++j) {
        if (profile.upload(t.members[j]) > 0.0) pool_index.push_back(j);
      }
      const std::size_t width = pool_index.size();
      suffix.assign(width + 1, 0.0);
      for (std::size_t k = width; k-- > 0;) suffix[k] = suffix[k + 1] + profile.upload(t.members[pool_index[k]]);
      std::size_t first = 0;
      double now = injected + t.slot_free.front().front();
      while (served < t.outsiders.size() && first < width) {
        double finish = now + 1.0 / suffix[first];
        // drop members whose next intra duty starts before the copy would finish
        while (first < width && deadline(pool_index[first]) < finish) {
          ++first;
          if (first < width) finish = now + 1.0 / suffix[first];
        }
        if (first == width) break;
        schedule.events.push_back(TransferEvent{chunk, t.pool.slice(first, width - first), t.outsiders[served++], now,
                                                finish, 1.0 / (finish - now)});
        now = finish;
      }
    } else {
      const double width = as_double(connections(model));
      using Slot = std::tuple<double, std::size_t, std::size_t>;  // free time, member, connection
      std::priority_queue<Slot, std::vector<Slot>, std::greater<>> slots;
      for (std::size_t j = 0; j < t.members.size(); ++j) {
        if (!(profile.upload(t.members[j]) > 0.0)) continue;
        for (std::size_t k = 0; k < t.slot_free[j].size(); ++k) slots.emplace(injected + t.slot_free[j][k], j, k);
      }
      while (served < t.outsiders.size() && !slots.empty()) {
        const auto [free_at, j, k] = slots.top();
        slots.pop();
        const double finish = free_at + width / profile.upload(t.members[j]);
        // not enough time before the next intra duty: stay idle
        if (finish > deadline(j)) continue;
        schedule.events.push_back(TransferEvent{chunk, {t.members[j]}, t.outsiders[served++], free_at, finish,
                                                1.0 / (finish - free_at)});
        slots.emplace(finish, j, k);
      }
    }
  }

  std::stable_sort(schedule.events.begin(), schedule.events.end(),
                   [](const TransferEvent& a, const TransferEvent& b) { return a.start < b.start; });
  return schedule;
}

MeasuredDelay measured_stream_delay(const BandwidthProfile& profile, const StreamConfig& stream,
                                    const DiffusionModel& model, std::optional<std::size_t> horizon) {
  auto plan = find_group_period(profile, stream, model);
  if (!plan) throw std::domain_error("no group period satisfies the scheme's conditions");
  MeasuredDelay m{*plan, {}, {}};
  m.schedule = plan_intra_then_inter(profile, stream, model, m.plan, horizon.value_or(3 * plan->period));
  m.result = verify_schedule(profile, stream, model, m.schedule);
  return m;
}

}  // namespace hetstream
