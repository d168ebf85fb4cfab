#include "doctest.h"

#include <stdexcept>

#include "hetstream/oracle.hpp"
#include "hetstream/parallel.hpp"
#include "hetstream/single_chunk.hpp"

using namespace hetstream;

namespace {
std::vector<Rational> r(std::initializer_list<Rational> v) { return v; }
}  // namespace

TEST_CASE("exhaustive search on hand-checked instances") {
  CHECK(exhaustive_min_delay(r({2, 1, 1}), 1, 3, OneToOne{}) == 1);
  CHECK(exhaustive_min_delay(r({Rational(8, 5), Rational(4, 5), Rational(4, 5), Rational(4, 5)}), 2, 4, OneToOne{}) ==
        Rational(5, 4));
  CHECK(exhaustive_min_delay(r({2, 1, 1}), 1, 3, OneToSome{2}) == 1);
  CHECK(exhaustive_min_delay(r({2, 1, 1}), 2, 2, OneToOne{}) == 0);
  CHECK(exhaustive_min_delay(r({1, 1, 1, 1}), 1, 4, OneToOne{}) == 2);
}

TEST_CASE("abstaining can beat sending to a slow peer") {
  // a schedule forcing the slow peer to start at once ties up the last receiver for 100 s
  const auto uploads = r({1, Rational(1, 100), 0, 0});
  const auto exhaustive = exhaustive_min_delay(uploads, 2, 4, OneToOne{});
  CHECK(exhaustive == 2);
  CHECK(exhaustive == exact_greedy_delays(uploads, 2, OneToOne{}, 4).back());
}

TEST_CASE("greedy matches exhaustive search") {
  for (const DiffusionModel& model : {DiffusionModel{OneToOne{}}, DiffusionModel{OneToSome{2}}}) {
    const auto instances = random_oracle_instances(40, 17, 5, 5, model);
    for (const auto& outcome : check_oracle_serial(instances)) {
      CHECK(outcome.exhaustive == outcome.greedy);
      CHECK(outcome.many_to_one <= outcome.exhaustive);
    }
  }
}

TEST_CASE("dummy sinks pad small populations") {
  // two peers, four copies: the extra copies land on zero-upload sinks
  const auto uploads = r({1, 1});
  CHECK(exhaustive_min_delay(uploads, 1, 4, OneToOne{}) == exact_greedy_delays(uploads, 1, OneToOne{}, 4).back());
}

TEST_CASE("exact curves agree with floating point") {
  const BandwidthProfile p({2.0, 0.5, 0.25, 0.25});
  const auto exact = exact_greedy_delays(exact_uploads(p), 1, OneToOne{}, 4);
  const auto approx = delay_one_to_one(p, 1, 4);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(exact[n - 1].convert_to<double>() == approx.at(n));
  const auto pooled = exact_many_to_one_delays(exact_uploads(p), 1, 4);
  CHECK(pooled[1] == Rational(1, 2));
}

TEST_CASE("oracle domain") {
  CHECK_THROWS_AS(exhaustive_min_delay(r({1, 1, 1, 1, 1, 1, 1}), 1, 7, OneToOne{}), std::domain_error);
  CHECK_THROWS_AS(exhaustive_min_delay(r({1, 1}), 1, 2, ManyToOne{}), std::domain_error);
  CHECK_THROWS_AS(exhaustive_min_delay(r({1, 1}), 1, 2, OneToSome{4}), std::domain_error);
}
