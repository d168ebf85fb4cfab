#include "hetstream/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace hetstream::io {

namespace {

double number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) throw InputError(std::string("missing numeric field '") + key + "'");
  return doc.at(key).get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

ClassSpec class_spec_from_json(const json& doc) {
  if (!doc.contains("classes") || !doc.at("classes").is_array()) throw InputError("profile needs 'classes' array");
  ClassSpec spec;
  for (const auto& cls : doc.at("classes")) spec.classes.push_back({number(cls, "size"), number(cls, "upload")});
  if (doc.contains("N")) {
    const double n = number(doc, "N");
    if (n < 1 || n != std::floor(n)) throw InputError("'N' must be a positive integer");
    spec.total = static_cast<std::size_t>(n);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return spec;
}

BandwidthProfile profile_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("profile must be a JSON object");
  try {
    if (doc.contains("uploads")) {
      if (!doc.at("uploads").is_array()) throw InputError("'uploads' must be an array");
      std::vector<double> uploads;
      for (const auto& u : doc.at("uploads")) {
        if (!u.is_number()) throw InputError("'uploads' entries must be numbers");
        uploads.push_back(u.get<double>());
      }
      return BandwidthProfile(std::move(uploads));
    }
    if (doc.contains("classes")) return expand_classes(class_spec_from_json(doc));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  throw InputError("profile needs 'uploads' or 'classes'");
}

json to_json(const BandwidthProfile& profile) {
  return json{{"uploads", std::vector<double>(profile.uploads().begin(), profile.uploads().end())}};
}

json to_json(const ClassSpec& spec) {
  json classes = json::array();
  for (const auto& cls : spec.classes) classes.push_back({{"size", cls.size}, {"upload", cls.upload}});
  json doc{{"classes", classes}};
  if (spec.total) doc["N"] = *spec.total;
  return doc;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

BandwidthProfile read_profile(const std::string& path) { return profile_from_json(read_json(path)); }

void write_curve_csv(std::ostream& out, const DelayCurve& curve) {
  out << "n,delay_seconds\n";
  for (std::size_t n = 1; n <= curve.n_max(); ++n) out << n << ',' << format_number(curve.at(n)) << '\n';
}

json to_json(const BoundReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json checks = json::object();
    for (std::size_t k = 0; k < kInequalityCount; ++k) {
      const auto which = static_cast<Inequality>(k);
      const auto& chk = row.check(which);
      if (!chk.applicable) continue;
      checks[std::string(name(which))] = {{"lhs", chk.lhs}, {"rhs", chk.rhs}, {"satisfied", chk.satisfied}};
    }
    rows.push_back({{"n", row.n},
                    {"dm", row.dm},
                    {"d1", row.d1},
                    {"dc", row.dc},
                    {"dm_fastest_homogeneous", row.dm_fastest},
                    {"dm_mean_homogeneous", row.dm_mean},
                    {"d1_mean_homogeneous", row.d1_mean},
                    {"dc_mean_homogeneous", row.dc_mean},
                    {"checks", checks}});
  }
  json summary = json::object();
  for (std::size_t k = 0; k < kInequalityCount; ++k) {
    const auto which = static_cast<Inequality>(k);
    const auto t = report.tally(which);
    const auto st = status(which);
    summary[std::string(name(which))] = {
        {"status", st == BoundStatus::kProven ? "proven" : st == BoundStatus::kConjecture ? "conjecture" : "informational"},
        {"evaluated", t.evaluated},
        {"violations", t.violations},
        {"worst_excess", t.worst_excess}};
  }
  return json{{"peers", report.peers}, {"n0", report.n0}, {"c", report.c}, {"summary", summary}, {"rows", rows}};
}

json to_json(const TransferEvent& event) {
  return json{{"chunk", event.chunk}, {"senders", event.senders.to_vector()}, {"receiver", event.receiver},
              {"start", event.start}, {"end", event.end},         {"rate", event.rate}};
}

TransferEvent transfer_from_json(const json& doc) {
  try {
    TransferEvent e;
    e.chunk = doc.at("chunk").get<std::size_t>();
    e.senders = SenderSet(doc.at("senders").get<std::vector<std::size_t>>());
    e.receiver = doc.at("receiver").get<std::size_t>();
    e.start = doc.at("start").get<double>();
    e.end = doc.at("end").get<double>();
    e.rate = doc.at("rate").get<double>();
    return e;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed transfer event: ") + e.what());
  }
}

void write_schedule_jsonl(std::ostream& out, const Schedule& schedule) {
  for (const auto& e : schedule.events) out << to_json(e).dump() << '\n';
}

Schedule read_schedule_jsonl(std::istream& in) {
  Schedule schedule;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed schedule line: ") + e.what());
    }
    schedule.events.push_back(transfer_from_json(doc));
    schedule.horizon = std::max(schedule.horizon, schedule.events.back().chunk + 1);
  }
  return schedule;
}

json to_json(const SimulationResult& result) {
  json violations = json::array();
  for (const auto& v : result.violations) {
    violations.push_back(
        {{"kind", to_string(v.kind)}, {"chunk", v.chunk}, {"peer", v.peer}, {"time", v.time}, {"detail", v.detail}});
  }
  json deliveries = json::array();
  for (const auto& d : result.deliveries) {
    deliveries.push_back({{"chunk", d.chunk}, {"injected", d.injected}, {"delay", finite_or_null(d.delay())}});
  }
  return json{{"valid", result.valid()},
              {"max_delay", finite_or_null(result.max_delay)},
              {"deliveries", deliveries},
              {"violations", violations}};
}

json to_json(const GroupDiagnostics& d) {
  return json{{"E", d.period},
              {"subsystem_delay", finite_or_null(d.subsystem_delay)},
              {"window", d.window},
              {"non_overlapping", d.non_overlapping},
              {"worst_group_delay", finite_or_null(d.worst_group_delay)},
              {"mean_upload", d.mean_upload},
              {"provisioning_threshold", d.provisioning_threshold},
              {"provisioned", d.provisioned},
              {"delay_bound", d.delay_bound},
              {"single_chunk_plus_window", finite_or_null(d.single_chunk_plus_window)}};
}

json to_json(const GroupPlan& plan, bool include_groups) {
  json doc{{"E", plan.period}, {"delay_bound", plan.delay_bound}, {"diagnostics", to_json(plan.diagnostics)}};
  if (include_groups) doc["groups"] = plan.groups;
  return doc;
}

}  // namespace hetstream::io
