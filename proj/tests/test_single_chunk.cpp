#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <random>

#include "hetstream/distributions.hpp"
#include "hetstream/single_chunk.hpp"

using namespace hetstream;

TEST_CASE("pooled delay closed form") {
  const BandwidthProfile p({2.0, 1.0, 1.0});
  const auto d = delay_many_to_one(p, 1, 3);
  CHECK(d.at(1) == 0.0);
  CHECK(d.at(2) == 0.5);
  CHECK(d.at(3) == doctest::Approx(0.5 + 1.0 / 3.0));
  CHECK(delay_many_to_one(p, 2, 3).at(2) == 0.0);
  CHECK_THROWS(d.at(0));
  CHECK_THROWS(d.at(4));
}

TEST_CASE("pooled delay beyond N uses the total") {
  const auto d = delay_many_to_one(homogeneous(1.0, 2), 1, 4);
  CHECK(d.at(4) == doctest::Approx(1.0 + 0.5 + 0.5));
}

TEST_CASE("one-to-one greedy") {
  CHECK(delay_one_to_one(homogeneous(1.0, 8), 1, 8).at(8) == 3.0);
  CHECK(delay_one_to_one(BandwidthProfile({1.6, 0.8, 0.8, 0.8}), 2, 4).at(4) == 1.25);
  CHECK(delay_one_to_one(BandwidthProfile({2.0, 1.0, 1.0}), 1, 3).at(3) == 1.0);
  CHECK(delay_one_to_one(homogeneous(1.0, 4), 2, 4).at(4) == 1.0);
}

TEST_CASE("one-to-c greedy") {
  const BandwidthProfile p({2.0, 1.0, 1.0});
  CHECK(delay_one_to_c(p, 1, 2, 3).at(3) == 1.0);
  const auto h = homogeneous(1.0, 50);
  CHECK(delay_one_to_c(h, 3, 1, 50).delays == delay_one_to_one(h, 3, 50).delays);
}

TEST_CASE("free-riders cannot relay") {
  const BandwidthProfile p({1.0, 0.0, 0.0});
  const auto d = delay_one_to_one(p, 1, 3);
  CHECK(d.at(3) == 2.0);
  const BandwidthProfile q({0.0, 0.0, 1.0});
  CHECK(delay_one_to_one(q, 1, 3).at(3) == 2.0);
}

TEST_CASE("homogeneous identities on random triples") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const double u = 0.25 + 4.0 * unit_uniform(rng);
    const std::size_t n = 1 + static_cast<std::size_t>(unit_uniform(rng) * 300);
    const std::size_t n0 = 1 + static_cast<std::size_t>(unit_uniform(rng) * std::min<std::size_t>(n, 9));
    const auto h = homogeneous(u, n);
    const double expect = std::ceil(std::log2(static_cast<double>(n) / static_cast<double>(n0))) / u;
    CHECK(delay_one_to_one(h, n0, n).at(n) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(delay_many_to_one(h, n0, n).at(n) ==
          doctest::Approx(approx_homogeneous_dm(u, n0, n).harmonic).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous approximation") {
  CHECK(approx_homogeneous_dm(1.0, 5, 10000).harmonic == doctest::Approx(7.704).epsilon(1e-4));
  CHECK(approx_homogeneous_dm(1.0, 1, 1).harmonic == 0.0);
  const auto a = approx_homogeneous_dm(2.0, 1, 2);
  CHECK(a.harmonic == 0.5);
  CHECK(a.logarithmic == doctest::Approx(std::log(2.0) / 2.0));
}

TEST_CASE("class chain approximations") {
  const auto h1 = lightly_skewed_h1(10000);
  const double exact = delay_many_to_one(expand_classes(h1), 5, 10000).final_delay();
  const auto chain = approx_classes_dm(h1, 5);
  CHECK(chain.total == doctest::Approx(exact).epsilon(0.02));
  CHECK(chain.transitions.size() == 2);
  const auto dominant = approx_dominant_class(h1, 5);
  CHECK(std::abs(dominant.total - chain.total) <= 0.5 * chain.total);

  const ClassSpec single{{{100, 2.0}}, std::nullopt};
  CHECK(approx_classes_dm(single, 4).total == doctest::Approx(std::log(25.0) / 2.0));
  CHECK(approx_dominant_class(single, 4).total == doctest::Approx(std::log(25.0) / 2.0));

  const ClassSpec lopsided{{{1000, 1000.0}, {10, 1.0}}, std::nullopt};
  CHECK(approx_dominant_class(lopsided, 1).transitions.at(0) == doctest::Approx(10.0 / 1e6));

  CHECK_THROWS_AS(approx_classes_dm(ClassSpec{{{2, 1.0}, {5, 0.5}}, std::nullopt}, 3), std::domain_error);
}

TEST_CASE("free-rider approximation") {
  const auto inside = approx_free_riders(50, 1.0, 100, 1, 40);
  CHECK(inside.linear_term == 0.0);
  CHECK(inside.value == doctest::Approx(std::log(40.0)));
  const auto all = approx_free_riders(5000, 1.0, 10000, 1, 10000);
  CHECK(all.value == doctest::Approx(std::log(5000.0) + 0.5));
  CHECK(all.linear_term_n1u == doctest::Approx(1.0));
  CHECK(approx_free_riders(10, 1.0, 20, 3, 3).value == 0.0);
}
