#include "doctest.h"

#include <cmath>

#include "hetstream/bounds.hpp"
#include "hetstream/distributions.hpp"

using namespace hetstream;

TEST_CASE("sharp one-to-one bound on a homogeneous system") {
  const auto report = evaluate_bounds(homogeneous(1.0, 8), 1, 2, 8);
  const auto& row = report.rows.at(7);
  CHECK(row.d1 == 3.0);
  const auto& sharp = row.check(Inequality::kD1SharpConjecture);
  CHECK(sharp.applicable);
  CHECK(sharp.rhs == doctest::Approx(1.0 + 2.592857 / std::log(2.0)).epsilon(1e-5));
  CHECK(sharp.satisfied);
  CHECK(report.proven_bounds_hold());
}

TEST_CASE("heterogeneity gain of the worked example") {
  const auto report = evaluate_bounds(BandwidthProfile({1.6, 0.8, 0.8, 0.8}), 2, 2, 4);
  const auto& row = report.rows.at(3);
  CHECK(row.d1 == 1.25);
  CHECK(row.d1_mean == 1.0);
  const auto& gain = row.check(Inequality::kD1HomogeneousGain);
  CHECK(gain.applicable);
  CHECK(gain.rhs == doctest::Approx(2.0));
  CHECK(gain.satisfied);
}

TEST_CASE("applicability windows") {
  const auto report = evaluate_bounds(homogeneous(1.0, 6), 2, 1, 9);
  CHECK_FALSE(report.rows.at(1).check(Inequality::kDmLogGain).applicable);  // n = n0
  CHECK(report.rows.at(3).check(Inequality::kDmLogGain).applicable);
  CHECK_FALSE(report.rows.at(7).check(Inequality::kD1HomogeneousGain).applicable);  // n > N
  CHECK_FALSE(report.rows.at(3).check(Inequality::kDcLogGain).applicable);          // c = 1
  CHECK(report.tally(Inequality::kDmBelowD1).evaluated == 9);
}

TEST_CASE("proven bounds hold on random scenarios") {
  for (std::size_t c : {2u, 3u}) {
    for (const auto& s : random_scenarios(70, 1234 + c, 128)) {
      const auto report = evaluate_bounds(s.profile, s.n0, c, s.profile.size());
      INFO(to_string(s.family), " N=", s.profile.size(), " n0=", s.n0);
      CHECK(report.proven_bounds_hold());
    }
  }
}

TEST_CASE("statuses") {
  CHECK(status(Inequality::kD1LooseBound) == BoundStatus::kProven);
  CHECK(status(Inequality::kD1SharpConjecture) == BoundStatus::kConjecture);
  CHECK(status(Inequality::kDcLogGain) == BoundStatus::kInformational);
  CHECK(name(Inequality::kDmBelowD1) != name(Inequality::kD1BelowDc));
}
