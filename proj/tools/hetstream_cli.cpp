// Command-line front end: profile generation, delay curves, bound reports,
// stream planning and simulation, oracle verification, table reproduction.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hetstream/bounds.hpp"
#include "hetstream/distributions.hpp"
#include "hetstream/io.hpp"
#include "hetstream/oracle.hpp"
#include "hetstream/parallel.hpp"
#include "hetstream/single_chunk.hpp"
#include "hetstream/stream.hpp"

using namespace hetstream;
using io::json;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kPrecondition = 3, kInternal = 4 };

// Output goes to a file when a path is given, to stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw io::InputError("cannot write '" + path + "'");
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

DiffusionModel model_from(const std::string& name, std::size_t c) {
  try {
    return parse_model(name, c);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::optional<double> homogeneous;
  std::string classes;
  std::string distribution;
  bool adversarial = false;
  std::string random;
  std::size_t n = 0;
  std::size_t n0 = 1;
  double excess = 0.0;
  double rate = 1.0;
  std::uint64_t seed = 1;
  std::string output;
};

int run_gen(const GenArgs& a) {
  const int chosen = a.homogeneous.has_value() + !a.classes.empty() + !a.distribution.empty() + a.adversarial +
                     !a.random.empty();
  if (chosen != 1) throw io::InputError("select exactly one generator");
  std::optional<BandwidthProfile> profile;
  const std::optional<std::size_t> n = a.n > 0 ? std::optional(a.n) : std::nullopt;
  try {
    if (a.homogeneous) {
      if (!n) throw io::InputError("--N is required");
      profile = hetstream::homogeneous(*a.homogeneous, *n);
    } else if (!a.classes.empty()) {
      profile = expand_classes(io::class_spec_from_json(io::read_json(a.classes)), n);
    } else if (!a.distribution.empty()) {
      profile = expand_classes(named_distribution(a.distribution, n.value_or(10000)));
    } else if (a.adversarial) {
      if (!n) throw io::InputError("--N is required");
      profile = generate_adversarial(*n, a.n0, a.excess, a.rate);
    } else {
      if (!n) throw io::InputError("--N is required");
      std::mt19937_64 rng(a.seed);
      profile = random_profile(parse_family(a.random), *n, rng);
    }
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  } catch (const std::domain_error& e) {
    throw io::InputError(e.what());
  }
  Sink sink(a.output);
  sink.out() << io::to_json(*profile).dump() << '\n';
  return kOk;
}

// --- delay / bounds ----------------------------------------------------------

struct CurveArgs {
  std::string profile;
  std::string model = "m";
  std::size_t c = 4;
  std::size_t n0 = 1;
  std::size_t n_max = 0;
  std::string output;
};

void check_n0(const BandwidthProfile& p, std::size_t n0) {
  if (n0 < 1 || n0 > p.size()) throw io::InputError("--n0 must lie in 1..N");
}

int run_delay(const CurveArgs& a) {
  const auto p = io::read_profile(a.profile);
  check_n0(p, a.n0);
  const auto curve = delay_curve(p, model_from(a.model, a.c), a.n0, a.n_max ? a.n_max : p.size());
  Sink sink(a.output);
  io::write_curve_csv(sink.out(), curve);
  return kOk;
}

int run_bounds(const CurveArgs& a) {
  const auto p = io::read_profile(a.profile);
  check_n0(p, a.n0);
  const auto report = evaluate_bounds(p, a.n0, a.c, a.n_max ? a.n_max : p.size());
  Sink sink(a.output);
  sink.out() << io::to_json(report).dump(2) << '\n';
  return report.proven_bounds_hold() ? kOk : kInternal;
}

// --- reproduce ----------------------------------------------------------------

struct ReproduceArgs {
  std::size_t n = 10000;
  std::size_t n0 = 5;
  std::size_t c = 4;
};

struct ReferenceRow {
  const char* distribution;
  double single;
  double stream_09;  // negative: not available
  double stream_05;
};

int run_reproduce(const ReproduceArgs& a) {
  // reference single-chunk delays and stream columns, by distribution then model
  const ReferenceRow rows[] = {
      {"H0", 7.70, -1, -1}, {"H0", 11, 11, 11},       {"H0", 20, 20, 20},
      {"H1", 3.72, 8.16, 9.72}, {"H1", 5.40, 16.51, 11.40}, {"H1", 9.00, 53.44, 19},
      {"H2", 2.70, 6.04, 6.96}, {"H2", 4.11, 14.88, 10.11}, {"H2", 6.86, 51.30, 16.86},
  };
  const DiffusionModel models[] = {ManyToOne{}, OneToOne{}, OneToSome{a.c}};
  std::cout << "distribution  model   D_computed  D_reference  rel_err  |  s    E   2E/s     D+E/s    reference\n";
  std::cout << std::fixed;
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& name = rows[3 * d].distribution;
    const auto profile = expand_classes(named_distribution(name, a.n));
    for (std::size_t m = 0; m < 3; ++m) {
      const auto& row = rows[3 * d + m];
      const double computed = delay_curve(profile, models[m], a.n0, profile.size()).final_delay();
      const double rel = std::abs(computed - row.single) / row.single;
      bool first = true;
      for (const auto [s, reference] : {std::pair{0.9, row.stream_09}, std::pair{0.5, row.stream_05}}) {
        if (first) {
          std::cout << std::setw(12) << std::left << name << "  " << std::setw(6) << to_string(models[m]) << std::right
                    << std::setprecision(4) << std::setw(12) << computed << std::setw(13) << row.single
                    << std::setprecision(2) << std::setw(8) << 100.0 * rel << "%  |  ";
        } else {
          std::cout << std::string(56, ' ') << "|  ";
        }
        first = false;
        std::cout << std::setprecision(1) << s << "  ";
        const auto plan = find_group_period(profile, {s, a.n0}, models[m]);
        if (plan) {
          std::cout << std::setw(3) << plan->period << std::setprecision(2) << std::setw(7) << plan->delay_bound
                    << std::setw(10) << plan->diagnostics.single_chunk_plus_window;
        } else {
          std::cout << "  -      -         -";
        }
        if (reference < 0)
          std::cout << "    N/A\n";
        else
          std::cout << std::setprecision(2) << std::setw(11) << reference << '\n';
      }
    }
  }
  std::cout << "stream columns: bounds from the group-rotation scheme, not asserted against the reference values\n";
  return kOk;
}

// --- stream -------------------------------------------------------------------

struct StreamArgs {
  std::string profile;
  double rate = 0.5;
  std::size_t n0 = 1;
  std::string model = "m";
  std::size_t c = 4;
  bool simulate = false;
  std::size_t horizon = 0;
  std::string schedule_out;
  std::string output;
};

int run_stream(const StreamArgs& a) {
  const auto p = io::read_profile(a.profile);
  const StreamConfig cfg{a.rate, a.n0};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  const auto model = model_from(a.model, a.c);
  const auto feasible = feasibility_check(p, cfg);
  const auto floor = forced_upload_floor(p, cfg);
  json doc{{"peers", p.size()},
           {"model", to_string(model)},
           {"s", a.rate},
           {"n0", a.n0},
           {"feasible", feasible.feasible},
           {"slack", feasible.slack},
           {"forced_upload_floor",
            {{"rank", floor.rank}, {"floor", std::isfinite(floor.floor) ? json(floor.floor) : json(nullptr)}}}};
  doc["responsibility_bound"] = feasible.feasible ? json(responsibility_delay_bound(p, cfg)) : json(nullptr);
  const auto plan = find_group_period(p, cfg, model);
  doc["plan"] = plan ? io::to_json(*plan) : json(nullptr);

  if (a.simulate) {
    if (!feasible.feasible) {
      std::cerr << "error: stream rate " << a.rate << " is infeasible (slack " << feasible.slack
                << "); no lossless schedule exists\n";
      return kPrecondition;
    }
    if (!plan) {
      std::cerr << "error: no group period E satisfies both conditions; nothing to simulate\n";
      return kPrecondition;
    }
    const auto m = measured_stream_delay(p, cfg, model, a.horizon ? std::optional(a.horizon) : std::nullopt);
    auto result = io::to_json(m.result);
    result.erase("deliveries");
    result["horizon"] = m.schedule.horizon;
    result["events"] = m.schedule.events.size();
    result["within_bound"] = m.max_delay() <= m.plan.delay_bound + kTolerance;
    doc["simulation"] = result;
    if (!a.schedule_out.empty()) {
      Sink sink(a.schedule_out);
      io::write_schedule_jsonl(sink.out(), m.schedule);
    }
  }
  Sink sink(a.output);
  sink.out() << doc.dump(2) << '\n';
  return kOk;
}

// --- check (replay a schedule file) -----------------------------------------

struct CheckArgs {
  std::string profile;
  std::string schedule;
  double rate = 0.5;
  std::size_t n0 = 1;
  std::string model = "m";
  std::size_t c = 4;
};

int run_check(const CheckArgs& a) {
  const auto p = io::read_profile(a.profile);
  std::ifstream in(a.schedule);
  if (!in) throw io::InputError("cannot open '" + a.schedule + "'");
  const auto schedule = io::read_schedule_jsonl(in);
  const auto result = verify_schedule(p, {a.rate, a.n0}, model_from(a.model, a.c), schedule);
  auto doc = io::to_json(result);
  doc.erase("deliveries");
  std::cout << doc.dump(2) << '\n';
  return result.valid() ? kOk : kPrecondition;
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::size_t scenarios = 1000;
  std::size_t oracle = 200;
  std::uint64_t seed = 2024;
  std::size_t max_peers = 256;
  std::string instances;
};

Rational parse_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) return Rational(v.get<double>());
  if (!v.is_string()) throw io::InputError("upload must be a number or an \"a/b\" string");
  const auto text = v.get<std::string>();
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                    boost::multiprecision::cpp_int(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw io::InputError("malformed rational '" + text + "'");
  }
}

std::vector<OracleInstance> read_instances(const std::string& path) {
  const auto doc = io::read_json(path);
  if (!doc.contains("instances") || !doc.at("instances").is_array()) throw io::InputError("needs 'instances' array");
  std::vector<OracleInstance> out;
  for (const auto& item : doc.at("instances")) {
    OracleInstance inst;
    try {
      for (const auto& u : item.at("uploads")) inst.uploads.push_back(parse_rational(u));
      inst.n0 = item.at("n0").get<std::size_t>();
      inst.n = item.at("n").get<std::size_t>();
      inst.model = model_from(item.value("model", std::string("1")), item.value("c", std::size_t{1}));
    } catch (const json::exception& e) {
      throw io::InputError(std::string("malformed instance: ") + e.what());
    }
    std::sort(inst.uploads.begin(), inst.uploads.end(), std::greater<>());
    if (inst.uploads.empty() || inst.uploads.front() <= 0 || inst.uploads.back() < 0)
      throw io::InputError("instance uploads must be non-negative with one positive");
    if (inst.n0 < 1 || inst.n0 > inst.uploads.size() || inst.n < inst.n0)
      throw io::InputError("instance needs 1 <= n0 <= N and n >= n0");
    out.push_back(std::move(inst));
  }
  return out;
}

int run_verify(const VerifyArgs& a) {
  bool ok = true;
  std::ostringstream report;

  if (!a.instances.empty()) {
    const auto instances = read_instances(a.instances);
    std::vector<OracleOutcome> outcomes;
    try {
      outcomes = check_oracle(instances);
    } catch (const std::domain_error& e) {
      throw io::InputError(e.what());
    }
    report << "instance  model   n0  n   exhaustive  greedy  many_to_one  match\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto& o = outcomes[i];
      report << std::setw(8) << i << "  " << std::setw(6) << std::left << to_string(instances[i].model) << std::right
             << std::setw(4) << instances[i].n0 << std::setw(3) << instances[i].n << "  " << std::setw(10)
             << o.exhaustive << std::setw(8) << o.greedy << std::setw(13) << o.many_to_one << "  "
             << (o.matches() ? "yes" : "NO") << '\n';
      ok &= o.matches();
    }
    std::cout << report.str();
    return ok ? kOk : kInternal;
  }

  // oracle battery
  for (const DiffusionModel& model : {DiffusionModel{OneToOne{}}, DiffusionModel{OneToSome{2}}, DiffusionModel{OneToSome{3}}}) {
    const auto instances = random_oracle_instances(a.oracle, a.seed, 5, 5, model);
    const auto outcomes = check_oracle(instances);
    std::size_t mismatches = 0;
    for (const auto& o : outcomes) mismatches += !o.matches() || o.many_to_one > o.exhaustive;
    report << "oracle " << to_string(model) << ": " << instances.size() << " instances, " << mismatches
           << " mismatches\n";
    ok &= mismatches == 0;
  }

  // bound property suite
  const auto scenarios = random_scenarios(a.scenarios, a.seed, a.max_peers);
  for (std::size_t c : {2u, 4u}) {
    const auto sweep = sweep_bounds(scenarios, c);
    report << "bounds c=" << c << " over " << sweep.size() << " profiles\n";
    for (std::size_t k = 0; k < kInequalityCount; ++k) {
      const auto which = static_cast<Inequality>(k);
      std::size_t evaluated = 0, violations = 0, profiles = 0;
      double worst = 0.0;
      for (const auto& s : sweep) {
        evaluated += s.tallies[k].evaluated;
        violations += s.tallies[k].violations;
        profiles += s.tallies[k].violations > 0;
        worst = std::max(worst, s.tallies[k].worst_excess);
      }
      const auto st = status(which);
      const char* label = st == BoundStatus::kProven ? "proven" : st == BoundStatus::kConjecture ? "conjecture" : "info";
      report << "  " << std::setw(30) << std::left << name(which) << std::right << std::setw(11) << label
             << std::setw(10) << evaluated << " checks " << std::setw(6) << violations << " violations in "
             << profiles << " profiles";
      if (violations > 0) report << " (worst excess " << io::format_number(worst) << ")";
      if (violations > 0 && st == BoundStatus::kProven) report << "  FAIL";
      if (violations > 0 && st == BoundStatus::kConjecture) report << "  finding";
      report << '\n';
      if (st == BoundStatus::kProven) ok &= violations == 0;
    }
  }
  report << (ok ? "all proven bounds hold\n" : "proven bound violated\n");
  std::cout << report.str();
  return ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-chunk and stream delay analysis for heterogeneous peer-to-peer live streaming"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a bandwidth profile as JSON");
  g->add_option("--homogeneous", gen.homogeneous, "common upload of every peer");
  g->add_option("--classes", gen.classes, "class spec JSON file")->check(CLI::ExistingFile);
  g->add_option("--distribution", gen.distribution, "reference distribution H0, H1 or H2");
  g->add_flag("--adversarial", gen.adversarial, "one fast peer and N-1 slow ones");
  g->add_option("--random", gen.random, "random family: homogeneous, uniform, exponential, power-law, two-class, "
                                        "free-riders, classes");
  g->add_option("--N", gen.n, "number of peers");
  g->add_option("--n0", gen.n0, "source copies (adversarial)");
  g->add_option("--V", gen.excess, "overprovisioning excess (adversarial)");
  g->add_option("--s", gen.rate, "stream rate (adversarial)");
  g->add_option("--seed", gen.seed, "seed for random families");
  g->add_option("-o,--output", gen.output, "output file (default stdout)");

  CurveArgs delay;
  auto* d = app.add_subcommand("delay", "single-chunk delay curve as CSV");
  d->add_option("--profile", delay.profile, "profile JSON")->required();
  d->add_option("--model", delay.model, "m, 1 or c")->check(CLI::IsMember({"m", "1", "c"}));
  d->add_option("--c", delay.c, "connections per peer for model c");
  d->add_option("--n0", delay.n0, "source copies");
  d->add_option("--nmax", delay.n_max, "last n (default N)");
  d->add_option("-o,--output", delay.output, "output file (default stdout)");

  CurveArgs bounds;
  bounds.c = 2;
  auto* b = app.add_subcommand("bounds", "evaluate every inequality, JSON report");
  b->add_option("--profile", bounds.profile, "profile JSON")->required();
  b->add_option("--c", bounds.c, "connections per peer");
  b->add_option("--n0", bounds.n0, "source copies");
  b->add_option("--nmax", bounds.n_max, "last n (default N)");
  b->add_option("-o,--output", bounds.output, "output file (default stdout)");

  ReproduceArgs repro;
  auto* r = app.add_subcommand("reproduce", "delay table for H0, H1, H2");
  r->add_option("--N", repro.n, "number of peers");
  r->add_option("--n0", repro.n0, "source copies");
  r->add_option("--c", repro.c, "connections for the one-to-c model");

  StreamArgs stream;
  auto* s = app.add_subcommand("stream", "feasibility, bounds and group plan, JSON report");
  s->add_option("--profile", stream.profile, "profile JSON")->required();
  s->add_option("--s", stream.rate, "stream rate, chunks per second");
  s->add_option("--n0", stream.n0, "source copies per chunk");
  s->add_option("--model", stream.model, "m, 1 or c")->check(CLI::IsMember({"m", "1", "c"}));
  s->add_option("--c", stream.c, "connections per peer for model c");
  s->add_flag("--simulate", stream.simulate, "plan, replay and verify the schedule");
  s->add_option("--horizon", stream.horizon, "chunks to simulate (default 3E)");
  s->add_option("--schedule-out", stream.schedule_out, "write the simulated schedule as JSON lines");
  s->add_option("-o,--output", stream.output, "output file (default stdout)");

  CheckArgs check;
  auto* k = app.add_subcommand("check", "replay a JSON-lines schedule against the model constraints");
  k->add_option("--profile", check.profile, "profile JSON")->required();
  k->add_option("--schedule", check.schedule, "schedule JSON lines")->required();
  k->add_option("--s", check.rate, "stream rate");
  k->add_option("--n0", check.n0, "source copies per chunk");
  k->add_option("--model", check.model, "m, 1 or c")->check(CLI::IsMember({"m", "1", "c"}));
  k->add_option("--c", check.c, "connections per peer for model c");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "oracle equivalence and bound property suites");
  v->add_option("--scenarios", verify.scenarios, "random profiles for the bound suite");
  v->add_option("--oracle", verify.oracle, "random instances per model for the oracle");
  v->add_option("--seed", verify.seed, "seed");
  v->add_option("--max-peers", verify.max_peers, "largest random profile");
  v->add_option("--instances", verify.instances, "JSON file of oracle instances")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*g) return run_gen(gen);
    if (*d) return run_delay(delay);
    if (*b) return run_bounds(bounds);
    if (*r) return run_reproduce(repro);
    if (*s) return run_stream(stream);
    if (*k) return run_check(check);
    if (*v) return run_verify(verify);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
