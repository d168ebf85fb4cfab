#include "doctest.h"

#include <algorithm>

#include "hetstream/distributions.hpp"
#include "hetstream/parallel.hpp"

using namespace hetstream;

TEST_CASE("parallel bound sweep matches the serial reference") {
  const auto scenarios = random_scenarios(21, 77, 96);
  const auto a = sweep_bounds(scenarios, 3);
  const auto b = sweep_bounds_serial(scenarios, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("parallel period search matches the serial reference") {
  for (const char* name : {"H0", "H1", "H2"}) {
    const auto p = expand_classes(named_distribution(name, 2000));
    for (const DiffusionModel& model : {DiffusionModel{ManyToOne{}}, DiffusionModel{OneToOne{}}, DiffusionModel{OneToSome{4}}}) {
      const auto serial = smallest_group_period_serial(p, {0.5, 5}, model);
      CHECK(smallest_group_period(p, {0.5, 5}, model) == serial);
      const auto plan = find_group_period(p, {0.5, 5}, model);
      CHECK(plan.has_value() == serial.has_value());
      if (plan) CHECK(plan->period == *serial);
    }
  }
  CHECK_FALSE(smallest_group_period(homogeneous(0.3, 40), {0.5, 1}, ManyToOne{}));
}

TEST_CASE("parallel oracle battery matches the serial reference") {
  const auto instances = random_oracle_instances(30, 3, 4, 5, OneToSome{3});
  CHECK(check_oracle(instances) == check_oracle_serial(instances));
}

TEST_CASE("oracle instances are well formed and reproducible") {
  const auto a = random_oracle_instances(50, 11, 5, 5, OneToOne{});
  const auto b = random_oracle_instances(50, 11, 5, 5, OneToOne{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].uploads == b[i].uploads);
    CHECK(a[i].n0 <= a[i].n);
    CHECK(a[i].n0 <= a[i].uploads.size());
    CHECK(a[i].uploads.front() > 0);
    CHECK(std::is_sorted(a[i].uploads.rbegin(), a[i].uploads.rend()));
  }
}
