#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "hetstream/distributions.hpp"
#include "hetstream/single_chunk.hpp"
#include "hetstream/stream.hpp"

using namespace hetstream;

TEST_CASE("feasibility") {
  const auto two = feasibility_check(BandwidthProfile({0.75, 0.25}), {1.0, 1});
  CHECK(two.feasible);
  CHECK(two.slack == doctest::Approx(0.0));
  const auto h = feasibility_check(homogeneous(1.0, 7), {1.0, 1});
  CHECK(h.feasible);
  CHECK(h.slack == doctest::Approx(1.0));
  const auto starved = feasibility_check(BandwidthProfile({0.5, 0.0, 0.0, 0.0}), {1.0, 1});
  CHECK_FALSE(starved.feasible);
  CHECK(starved.slack == doctest::Approx(-2.5));
  CHECK_THROWS(feasibility_check(homogeneous(1.0, 2), {0.0, 1}));
}

TEST_CASE("feasibility is monotone in upload") {
  std::vector<double> uploads{0.3, 0.2, 0.1, 0.0};
  bool was_feasible = false;
  for (int step = 0; step < 80; ++step) {
    const bool now = feasibility_check(BandwidthProfile(uploads), {1.0, 1}).feasible;
    CHECK((!was_feasible || now));
    was_feasible = now;
    uploads[step % 4] += 0.05;
  }
  CHECK(was_feasible);
}

TEST_CASE("responsibility bound") {
  CHECK(responsibility_delay_bound(generate_adversarial(10, 1, 0.0, 1.0), {1.0, 1}) == doctest::Approx(81.0));
  CHECK(responsibility_delay_bound(homogeneous(1.0, 2), {1.0, 1}) == 2.0);
  CHECK(responsibility_delay_bound(homogeneous(1.0, 10000), {1.0, 1}) == 19998.0);
  CHECK_THROWS_AS(responsibility_delay_bound(BandwidthProfile({0.5, 0.0, 0.0, 0.0}), {1.0, 1}), std::domain_error);
}

TEST_CASE("forced upload floor") {
  for (double eps : {0.25, 0.1, 0.01}) {
    const auto f = forced_upload_floor(BandwidthProfile({1.0 - eps, eps}), {1.0, 1});
    CHECK(f.rank == 2);
    CHECK(f.floor == doctest::Approx(1.0 / eps));
  }
  const auto adv = adversarial_lower_bound(10, 1, 0.0, 1.0);
  CHECK(adv.floor == doctest::Approx(4.5));
  CHECK(adv.witness_holds);
  CHECK(forced_upload_floor(adv.profile, {1.0, 1}).floor == doctest::Approx(4.5));
  CHECK(adversarial_lower_bound(10, 1, 1e9, 1.0).floor < 1e-6);
  CHECK(forced_upload_floor(homogeneous(1.0, 3), {1.0, 3}).floor == 0.0);
}

TEST_CASE("group membership") {
  CHECK(group_members(10, 4, 4) == std::vector<std::size_t>{4, 8});
  CHECK(group_members(10, 4, 1) == std::vector<std::size_t>{1, 5, 9});
  CHECK_THROWS(group_members(10, 4, 5));
}

TEST_CASE("group period conditions") {
  const auto small = homogeneous(1.0, 4);
  const StreamConfig s{0.5, 1};
  const auto two = evaluate_group_period(small, s, ManyToOne{}, 2);
  CHECK(two.subsystem_delay == doctest::Approx(1.0));
  CHECK(two.provisioning_threshold == doctest::Approx(1.0));
  CHECK(two.qualifies());
  CHECK(two.delay_bound == 8.0);
  const auto found = find_group_period(small, s, ManyToOne{});
  REQUIRE(found);
  CHECK(found->period == 1);

  const auto big = homogeneous(1.0, 10000);
  const auto four = evaluate_group_period(big, {0.5, 5}, ManyToOne{}, 4);
  // peers 4, 8, ..., 10000 form a 2500-peer homogeneous system; ln(500) is its log approximation
  CHECK(four.subsystem_delay == doctest::Approx(approx_homogeneous_dm(1.0, 5, 2500).harmonic));
  CHECK(four.subsystem_delay == doctest::Approx(std::log(500.0)).epsilon(0.02));
  CHECK(four.subsystem_delay <= four.window);
  CHECK(four.qualifies());
  CHECK(find_group_period(big, {0.5, 5}, ManyToOne{})->period == 4);

  CHECK_FALSE(find_group_period(homogeneous(0.4, 50), s, ManyToOne{}));
  CHECK_FALSE(find_group_period(BandwidthProfile({0.75, 0.25}), {1.0, 1}, OneToOne{}));
  CHECK(find_group_period(expand_classes(lightly_skewed_h1(10000)), {0.5, 5}, ManyToOne{}));
}

TEST_CASE("planner and replay") {
  const auto p = homogeneous(1.0, 4);
  const StreamConfig s{0.5, 1};
  const auto plan = make_group_plan(p, s, ManyToOne{}, 2);
  CHECK(plan_intra_then_inter(p, s, ManyToOne{}, plan, 0).events.empty());
  const auto schedule = plan_intra_then_inter(p, s, ManyToOne{}, plan, 8);
  const auto r = verify_schedule(p, s, ManyToOne{}, schedule);
  CHECK(r.valid());
  CHECK(r.max_delay <= 8.0 + 1e-9);
  CHECK(r.deliveries.size() == 8);

  const auto m = measured_stream_delay(p, s, ManyToOne{});
  CHECK(m.result.valid());
  CHECK(m.max_delay() <= m.plan.delay_bound + 1e-9);
  CHECK_THROWS_AS(measured_stream_delay(homogeneous(0.4, 50), s, ManyToOne{}), std::domain_error);
}

TEST_CASE("one chunk is no faster than the single-chunk optimum") {
  const auto p = expand_classes(skewed_h2(300));
  const StreamConfig s{0.5, 3};
  for (const DiffusionModel& model : {DiffusionModel{ManyToOne{}}, DiffusionModel{OneToOne{}}, DiffusionModel{OneToSome{2}}}) {
    const auto m = measured_stream_delay(p, s, model, 1);
    CHECK(m.result.valid());
    CHECK(m.max_delay() >= delay_curve(p, model, s.n0, p.size()).final_delay() - 1e-9);
  }
}

TEST_CASE("simulated delay stays within twice the period") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const auto family = kAllFamilies[trial % 7];
    const std::size_t n = 20 + static_cast<std::size_t>(unit_uniform(rng) * 200);
    const auto p = random_profile(family, n, rng);
    const StreamConfig s{0.5 * p.mean(), 1 + static_cast<std::size_t>(trial % 4)};
    for (const DiffusionModel& model : {DiffusionModel{ManyToOne{}}, DiffusionModel{OneToOne{}}, DiffusionModel{OneToSome{3}}}) {
      if (!find_group_period(p, s, model)) continue;
      const auto m = measured_stream_delay(p, s, model);
      INFO(to_string(family), " N=", n, " model ", to_string(model), " E=", m.plan.period);
      CHECK(m.result.valid());
      CHECK(m.max_delay() <= m.plan.delay_bound + 1e-9);
    }
  }
}
