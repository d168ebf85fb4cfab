#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "hetstream/bounds.hpp"
#include "hetstream/profile.hpp"
#include "hetstream/schedule.hpp"
#include "hetstream/single_chunk.hpp"
#include "hetstream/stream.hpp"

namespace hetstream::io {

using nlohmann::json;

/// Thrown for malformed input files; carries a user-facing message.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts {"uploads": [...]} (any order) or {"classes": [{"size", "upload"}...], "N": n}.
/// Class sizes are fractions of N when "N" is present, peer counts otherwise.
BandwidthProfile profile_from_json(const json& doc);
ClassSpec class_spec_from_json(const json& doc);
json to_json(const BandwidthProfile& profile);
json to_json(const ClassSpec& spec);

BandwidthProfile read_profile(const std::string& path);
json read_json(const std::string& path);

/// `n,delay_seconds` header then one row per n.
void write_curve_csv(std::ostream& out, const DelayCurve& curve);
json to_json(const BoundReport& report);

/// One JSON object per line: chunk, senders, receiver, start, end, rate.
void write_schedule_jsonl(std::ostream& out, const Schedule& schedule);
Schedule read_schedule_jsonl(std::istream& in);
json to_json(const TransferEvent& event);
TransferEvent transfer_from_json(const json& doc);

json to_json(const SimulationResult& result);
json to_json(const GroupDiagnostics& diagnostics);
json to_json(const GroupPlan& plan, bool include_groups = false);

/// Shortest round-trippable decimal form of a double.
std::string format_number(double value);

}  // namespace hetstream::io
