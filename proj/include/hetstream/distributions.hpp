#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hetstream/profile.hpp"

namespace hetstream {

// Reference bandwidth distributions with unit mean bandwidth.
ClassSpec homogeneous_h0(std::size_t n);
ClassSpec lightly_skewed_h1(std::size_t n);
ClassSpec skewed_h2(std::size_t n);

/// Looks up "H0", "H1" or "H2" (case-insensitive).
ClassSpec named_distribution(const std::string& name, std::size_t n);

BandwidthProfile homogeneous(double upload, std::size_t n);

enum class ProfileFamily { kHomogeneous, kUniform, kExponential, kPowerLaw, kTwoClass, kFreeRiders, kClasses };

inline constexpr ProfileFamily kAllFamilies[] = {
    ProfileFamily::kHomogeneous, ProfileFamily::kUniform,    ProfileFamily::kExponential, ProfileFamily::kPowerLaw,
    ProfileFamily::kTwoClass,    ProfileFamily::kFreeRiders, ProfileFamily::kClasses};

std::string to_string(ProfileFamily family);
ProfileFamily parse_family(const std::string& name);

/// Platform-independent uniform draw in [0, 1) from a 64-bit engine.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Draws an N-peer profile of the given family.
BandwidthProfile random_profile(ProfileFamily family, std::size_t n, std::mt19937_64& rng);

/// A randomized single-chunk scenario used by the property suites.
struct Scenario {
  ProfileFamily family;
  BandwidthProfile profile;
  std::size_t n0;
};

/// `count` scenarios cycling through every family, reproducible from `seed`.
std::vector<Scenario> random_scenarios(std::size_t count, std::uint64_t seed, std::size_t max_peers = 256);

}  // namespace hetstream
