#include "hetstream/single_chunk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hetstream/greedy_diffusion.hpp"

namespace hetstream {

namespace {

void check_curve_args(std::size_t n0, std::size_t n_max) {
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
}

}  // namespace

double DelayCurve::at(std::size_t n) const {
  if (n < 1 || n > delays.size()) throw std::out_of_range("DelayCurve::at: n out of range");
  return delays[n - 1];
}

DelayCurve delay_many_to_one(const BandwidthProfile& profile, std::size_t n0, std::size_t n_max) {
  check_curve_args(n0, n_max);
  DelayCurve curve{ManyToOne{}, n0, std::vector<double>(n_max, 0.0)};
  double elapsed = 0.0;
  for (std::size_t n = n0 + 1; n <= n_max; ++n) {
    elapsed += 1.0 / profile.cumulative(n - 1);
    curve.delays[n - 1] = elapsed;
  }
  return curve;
}

DelayCurve delay_one_to_one(const BandwidthProfile& profile, std::size_t n0, std::size_t n_max) {
  check_curve_args(n0, n_max);
  return DelayCurve{OneToOne{}, n0, greedy_delays<double>(profile.uploads(), n0, 1, n_max)};
}

DelayCurve delay_one_to_c(const BandwidthProfile& profile, std::size_t n0, std::size_t c, std::size_t n_max) {
  check_curve_args(n0, n_max);
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  return DelayCurve{OneToSome{c}, n0, greedy_delays<double>(profile.uploads(), n0, c, n_max)};
}

DelayCurve delay_curve(const BandwidthProfile& profile, const DiffusionModel& model, std::size_t n0,
                       std::size_t n_max) {
  if (is_many_to_one(model)) return delay_many_to_one(profile, n0, n_max);
  if (std::holds_alternative<OneToOne>(model)) return delay_one_to_one(profile, n0, n_max);
  return delay_one_to_c(profile, n0, connections(model), n_max);
}

HomogeneousApprox approx_homogeneous_dm(double upload, std::size_t n0, std::size_t n) {
  if (!(upload > 0.0)) throw std::invalid_argument("upload must be positive");
  if (n0 < 1 || n < n0) throw std::invalid_argument("requires n >= n0 >= 1");
  double harmonic = 0.0;
  for (std::size_t k = n0; k < n; ++k) harmonic += 1.0 / static_cast<double>(k);
  return {harmonic / upload, std::log(static_cast<double>(n) / static_cast<double>(n0)) / upload};
}

namespace {

struct ResolvedClass {
  double count;
  double upload;
};

std::vector<ResolvedClass> resolve(const ClassSpec& spec, std::size_t n0) {
  const auto counts = class_counts(spec);
  if (static_cast<double>(n0) > static_cast<double>(counts.front()))
    throw std::domain_error("class approximation requires n0 <= n_1");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  std::vector<ResolvedClass> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.push_back({static_cast<double>(counts[i]), spec.classes[i].upload});
  return out;
}

template <class Term>
ClassChainApprox chain(const ClassSpec& spec, std::size_t n0, Term term) {
  const auto classes = resolve(spec, n0);
  ClassChainApprox result{};
  result.first_class = std::log(classes[0].count / static_cast<double>(n0)) / classes[0].upload;
  result.total = result.first_class;
  double capacity = classes[0].count * classes[0].upload;
  for (std::size_t i = 1; i < classes.size(); ++i) {
    const double t = term(classes[i], capacity);
    result.transitions.push_back(t);
    result.total += t;
    capacity += classes[i].count * classes[i].upload;
  }
  return result;
}

}  // namespace

ClassChainApprox approx_classes_dm(const ClassSpec& spec, std::size_t n0) {
  return chain(spec, n0, [](const ResolvedClass& cls, double capacity) {
    // a free-rider class fills linearly: the limit of ln(1 + n u / C)/u as u -> 0
    if (cls.upload == 0.0) return cls.count / capacity;
    return std::log1p(cls.count * cls.upload / capacity) / cls.upload;
  });
}

ClassChainApprox approx_dominant_class(const ClassSpec& spec, std::size_t n0) {
  return chain(spec, n0, [](const ResolvedClass& cls, double capacity) { return cls.count / capacity; });
}

FreeRiderApprox approx_free_riders(std::size_t n1, double upload, std::size_t population, std::size_t n0,
                                   std::size_t copies) {
  if (!(upload > 0.0)) throw std::invalid_argument("upload must be positive");
  if (n0 < 1 || n1 < n0 || copies < n0 || n1 > population)
    throw std::invalid_argument("requires 1 <= n0 <= n1 <= N and n0 <= n");
  FreeRiderApprox r{};
  r.logarithmic_term = std::log(static_cast<double>(std::min(copies, n1)) / static_cast<double>(n0)) / upload;
  const double excess = copies > n1 ? static_cast<double>(copies - n1) : 0.0;
  r.linear_term = excess / (static_cast<double>(population) * upload);
  r.linear_term_n1u = excess / (static_cast<double>(n1) * upload);
  r.value = r.logarithmic_term + r.linear_term;
  r.note = "linear term divided by N*u; the dominant-class denominator n1*u gives linear_term_n1u";
  return r;
}

}  // namespace hetstream
