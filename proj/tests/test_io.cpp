#include "doctest.h"

#include <sstream>

#include "hetstream/distributions.hpp"
#include "hetstream/io.hpp"

using namespace hetstream;
using hetstream::io::json;

TEST_CASE("profile documents") {
  CHECK(io::profile_from_json(json::parse(R"({"uploads": [1, 3, 2]})")) == BandwidthProfile({3.0, 2.0, 1.0}));
  const auto h1 = io::profile_from_json(
      json::parse(R"({"classes": [{"size": 0.3333333333333333, "upload": 2.22},
                                   {"size": 0.3333333333333333, "upload": 0.56},
                                   {"size": 0.3333333333333334, "upload": 0.222}], "N": 10000})"));
  CHECK(h1 == expand_classes(lightly_skewed_h1(10000)));
  const auto counts = io::profile_from_json(json::parse(R"({"classes": [{"size": 1, "upload": 1.6}, {"size": 3, "upload": 0.8}]})"));
  CHECK(counts == BandwidthProfile({1.6, 0.8, 0.8, 0.8}));
  CHECK_THROWS_AS(io::profile_from_json(json::parse(R"({"uploads": [-1]})")), io::InputError);
  CHECK_THROWS_AS(io::profile_from_json(json::parse(R"({"peers": []})")), io::InputError);
  CHECK_THROWS_AS(io::profile_from_json(json::parse("[1, 2]")), io::InputError);
  CHECK_THROWS_AS(io::read_profile("/nonexistent/profile.json"), io::InputError);
}

TEST_CASE("class spec round trip") {
  const auto spec = skewed_h2(1000);
  const auto back = io::class_spec_from_json(io::to_json(spec));
  CHECK(expand_classes(back) == expand_classes(spec));
}

TEST_CASE("curve csv") {
  std::ostringstream out;
  io::write_curve_csv(out, delay_many_to_one(BandwidthProfile({2.0, 1.0, 1.0}), 1, 3));
  CHECK(out.str() == "n,delay_seconds\n1,0\n2,0.5\n3,0.8333333333333333\n");
}

TEST_CASE("schedule lines round trip") {
  Schedule s;
  s.events.push_back(TransferEvent{0, {}, 1, 0.0, 0.0, 0.0});
  s.events.push_back(TransferEvent{2, {1, 3}, 2, 0.25, 0.75, 2.0});
  std::stringstream buf;
  io::write_schedule_jsonl(buf, s);
  const auto back = io::read_schedule_jsonl(buf);
  CHECK(back.horizon == 3);
  REQUIRE(back.events.size() == 2);
  CHECK(back.events[1] == s.events[1]);
  std::istringstream bad("{\"chunk\": 0}\n");
  CHECK_THROWS_AS(io::read_schedule_jsonl(bad), io::InputError);
}

TEST_CASE("reports serialize") {
  const auto report = evaluate_bounds(homogeneous(1.0, 4), 1, 2, 4);
  const auto doc = io::to_json(report);
  CHECK(doc.at("rows").size() == 4);
  CHECK(doc.at("summary").at("d1_loose_bound").at("violations") == 0);
  CHECK(io::format_number(0.1) == "0.1");
}
