#include "hetstream/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hetstream {

ClassSpec homogeneous_h0(std::size_t n) { return ClassSpec{{{1.0, 1.0}}, n}; }

// Class sizes are printed as 33% each; thirds keep the fractions summing to 1.
ClassSpec lightly_skewed_h1(std::size_t n) {
  return ClassSpec{{{1.0 / 3.0, 2.22}, {1.0 / 3.0, 0.56}, {1.0 / 3.0, 0.222}}, n};
}

ClassSpec skewed_h2(std::size_t n) { return ClassSpec{{{0.3, 2.92}, {0.4, 0.292}, {0.3, 0.0292}}, n}; }

ClassSpec named_distribution(const std::string& name, std::size_t n) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (key == "H0") return homogeneous_h0(n);
  if (key == "H1") return lightly_skewed_h1(n);
  if (key == "H2") return skewed_h2(n);
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

BandwidthProfile homogeneous(double upload, std::size_t n) { return BandwidthProfile(std::vector<double>(n, upload)); }

std::string to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::kHomogeneous: return "homogeneous";
    case ProfileFamily::kUniform: return "uniform";
    case ProfileFamily::kExponential: return "exponential";
    case ProfileFamily::kPowerLaw: return "power-law";
    case ProfileFamily::kTwoClass: return "two-class";
    case ProfileFamily::kFreeRiders: return "free-riders";
    case ProfileFamily::kClasses: return "classes";
  }
  return "unknown";
}

ProfileFamily parse_family(const std::string& name) {
  for (auto family : kAllFamilies) {
    if (to_string(family) == name) return family;
  }
  throw std::invalid_argument("unknown profile family '" + name + "'");
}

namespace {

double uniform_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

std::size_t index_in(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(hi - lo + 1));
}

}  // namespace

BandwidthProfile random_profile(ProfileFamily family, std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("random_profile needs at least one peer");
  std::vector<double> uploads(n);
  switch (family) {
    case ProfileFamily::kHomogeneous: {
      std::fill(uploads.begin(), uploads.end(), uniform_in(rng, 0.1, 10.0));
      break;
    }
    case ProfileFamily::kUniform: {
      const double hi = uniform_in(rng, 0.5, 10.0);
      for (auto& u : uploads) u = uniform_in(rng, 0.01, hi);
      break;
    }
    case ProfileFamily::kExponential: {
      const double mean = uniform_in(rng, 0.2, 5.0);
      for (auto& u : uploads) u = -mean * std::log1p(-unit_uniform(rng)) + 1e-3;
      break;
    }
    case ProfileFamily::kPowerLaw: {
      const double alpha = uniform_in(rng, 1.1, 3.0);
      for (auto& u : uploads) u = 0.05 * std::pow(1.0 - unit_uniform(rng), -1.0 / alpha);
      break;
    }
    case ProfileFamily::kTwoClass: {
      const double fast = uniform_in(rng, 1.0, 20.0);
      const double slow = fast * uniform_in(rng, 0.01, 0.9);
      const std::size_t fast_count = index_in(rng, 1, n);
      for (std::size_t i = 0; i < n; ++i) uploads[i] = i < fast_count ? fast : slow;
      break;
    }
    case ProfileFamily::kFreeRiders: {
      const double share = uniform_in(rng, 0.0, 0.9);
      const double hi = uniform_in(rng, 0.5, 5.0);
      for (auto& u : uploads) u = unit_uniform(rng) < share ? 0.0 : uniform_in(rng, 0.5 * hi, hi);
      if (std::none_of(uploads.begin(), uploads.end(), [](double u) { return u > 0.0; })) uploads[0] = hi;
      break;
    }
    case ProfileFamily::kClasses: {
      const std::size_t classes = index_in(rng, 2, 4);
      std::vector<double> levels(classes);
      double level = uniform_in(rng, 1.0, 10.0);
      for (auto& l : levels) {
        l = level;
        level *= uniform_in(rng, 0.05, 0.8);
      }
      for (auto& u : uploads) u = levels[std::min(classes - 1, index_in(rng, 0, classes - 1))];
      break;
    }
  }
  return BandwidthProfile(std::move(uploads));
}

std::vector<Scenario> random_scenarios(std::size_t count, std::uint64_t seed, std::size_t max_peers) {
  std::mt19937_64 rng(seed);
  std::vector<Scenario> scenarios;
  scenarios.reserve(count);
  constexpr std::size_t kFamilies = std::size(kAllFamilies);
  for (std::size_t k = 0; k < count; ++k) {
    const auto family = kAllFamilies[k % kFamilies];
    const std::size_t n = index_in(rng, 1, max_peers);
    const std::size_t n0 = index_in(rng, 1, std::min<std::size_t>(n, 8));
    scenarios.push_back(Scenario{family, random_profile(family, n, rng), n0});
  }
  return scenarios;
}

}  // namespace hetstream
