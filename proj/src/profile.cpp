#include "hetstream/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hetstream {

BandwidthProfile::BandwidthProfile(std::vector<double> uploads) : uploads_(std::move(uploads)) {
  if (uploads_.empty()) throw std::invalid_argument("profile must contain at least one peer");
  for (double u : uploads_) {
    if (!std::isfinite(u) || u < 0.0) throw std::invalid_argument("uploads must be finite and non-negative");
  }
  std::sort(uploads_.begin(), uploads_.end(), std::greater<>());
  if (!(uploads_.front() > 0.0)) throw std::invalid_argument("profile has no upload capacity");
  prefix_.resize(uploads_.size() + 1, 0.0);
  for (std::size_t i = 0; i < uploads_.size(); ++i) prefix_[i + 1] = prefix_[i] + uploads_[i];
}

double BandwidthProfile::cumulative(std::size_t k) const {
  return prefix_[std::min(k, uploads_.size())];
}

double BandwidthProfile::min_positive_upload() const {
  return uploads_[uploaders() - 1];
}

std::size_t BandwidthProfile::uploaders() const {
  return static_cast<std::size_t>(
      std::count_if(uploads_.begin(), uploads_.end(), [](double u) { return u > 0.0; }));
}

double cumulative_bandwidth(const BandwidthProfile& profile, std::size_t k) {
  if (k < 1 || k > profile.size()) throw std::domain_error("cumulative_bandwidth: k out of range");
  return profile.cumulative(k);
}

void ClassSpec::validate() const {
  if (classes.empty()) throw std::invalid_argument("class spec is empty");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    if (!(cls.size > 0.0) || !std::isfinite(cls.size)) throw std::invalid_argument("class sizes must be positive");
    if (!(cls.upload >= 0.0) || !std::isfinite(cls.upload)) throw std::invalid_argument("class uploads must be non-negative");
    if (i > 0 && !(classes[i - 1].upload > cls.upload))
      throw std::invalid_argument("class uploads must be strictly decreasing");
    if (!uses_fractions() && cls.size != std::floor(cls.size))
      throw std::invalid_argument("class counts must be integers when no total is given");
  }
  if (uses_fractions()) {
    double sum = 0.0;
    for (const auto& cls : classes) sum += cls.size;
    if (std::abs(sum - 1.0) > kTolerance) throw std::invalid_argument("class fractions must sum to 1");
    if (*total < classes.size()) throw std::invalid_argument("total smaller than the number of classes");
  }
  if (!(classes.front().upload > 0.0)) throw std::invalid_argument("class spec has no upload capacity");
}

std::vector<std::size_t> class_counts(const ClassSpec& spec) {
  spec.validate();
  std::vector<std::size_t> counts(spec.classes.size());
  if (!spec.uses_fractions()) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = static_cast<std::size_t>(spec.classes[i].size);
    return counts;
  }
  const auto n = static_cast<double>(*spec.total);
  std::vector<double> remainders(counts.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double quota = spec.classes[i].size * n;
    if (std::abs(quota - std::round(quota)) <= kTolerance * std::max(1.0, quota)) quota = std::round(quota);
    counts[i] = static_cast<std::size_t>(std::floor(quota));
    // quantized so that remainders equal up to rounding noise compare equal
    remainders[i] = std::round((quota - std::floor(quota)) / kTolerance);
    assigned += counts[i];
  }
  if (assigned > *spec.total) throw std::domain_error("class fractions overshoot the population");
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  // stable: equal remainders keep class order, i.e. favour higher bandwidth
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  std::size_t missing = *spec.total - assigned;
  if (missing > counts.size()) throw std::domain_error("class fractions cannot be rounded to the population");
  for (std::size_t k = 0; k < missing; ++k) ++counts[order[k]];
  for (std::size_t c : counts) {
    if (c == 0) throw std::domain_error("a class rounds to zero peers");
  }
  return counts;
}

BandwidthProfile expand_classes(const ClassSpec& spec, std::optional<std::size_t> n) {
  ClassSpec resolved = spec;
  if (n && resolved.uses_fractions()) resolved.total = n;
  const auto counts = class_counts(resolved);
  std::vector<double> uploads;
  for (std::size_t i = 0; i < counts.size(); ++i) uploads.insert(uploads.end(), counts[i], resolved.classes[i].upload);
  if (n && uploads.size() != *n) throw std::domain_error("class counts do not sum to the requested population");
  return BandwidthProfile(std::move(uploads));
}

BandwidthProfile generate_adversarial(std::size_t n, std::size_t n0, double excess, double rate) {
  if (n0 < 1 || n <= n0 + 1) throw std::domain_error("generate_adversarial requires N > n0 + 1 and n0 >= 1");
  if (!(excess >= 0.0) || !(rate > 0.0)) throw std::domain_error("generate_adversarial requires V >= 0 and s > 0");
  const auto nd = static_cast<double>(n);
  const auto n0d = static_cast<double>(n0);
  std::vector<double> uploads(n, (n0d + excess + 1.0) / (nd - 1.0) * rate);
  uploads[0] = (nd - n0d - 1.0) * rate;
  return BandwidthProfile(std::move(uploads));
}

std::size_t connections(const DiffusionModel& model) {
  if (std::holds_alternative<OneToOne>(model)) return 1;
  if (const auto* some = std::get_if<OneToSome>(&model)) {
    if (some->c == 0) throw std::invalid_argument("one-to-c requires c >= 1");
    return some->c;
  }
  throw std::invalid_argument("many-to-one has no per-sender connection count");
}

bool is_many_to_one(const DiffusionModel& model) { return std::holds_alternative<ManyToOne>(model); }

std::string to_string(const DiffusionModel& model) {
  if (is_many_to_one(model)) return "(inf/1)";
  if (std::holds_alternative<OneToOne>(model)) return "(1/1)";
  return "(1/" + std::to_string(std::get<OneToSome>(model).c) + ")";
}

DiffusionModel parse_model(const std::string& name, std::size_t c) {
  if (name == "m" || name == "many-to-one" || name == "inf") return ManyToOne{};
  if (name == "1" || name == "one-to-one") return OneToOne{};
  if (name == "c" || name == "one-to-c" || name == "one-to-some") {
    if (c == 0) throw std::invalid_argument("one-to-c requires c >= 1");
    return OneToSome{c};
  }
  throw std::invalid_argument("unknown diffusion model '" + name + "'");
}

void StreamConfig::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("stream rate must be positive");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
}

}  // namespace hetstream
