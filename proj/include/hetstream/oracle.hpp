#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hetstream/profile.hpp"

namespace hetstream {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational image of a profile (doubles are binary fractions, so the
/// conversion is lossless).
std::vector<Rational> exact_uploads(const BandwidthProfile& profile);

/// Brute-force search state: which peers hold the chunk, what is in flight,
/// and the current instant.
struct SearchNode {
  struct InFlight {
    std::size_t sender;    // 0-based rank
    std::size_t receiver;  // 0-based rank
    Rational finish;
  };
  std::uint32_t capable = 0;  // bit i set when rank i+1 holds a copy
  std::vector<InFlight> in_flight;
  Rational elapsed = 0;
};

inline constexpr std::size_t kOracleMaxPeers = 6;
inline constexpr std::size_t kOracleMaxCopies = 6;
inline constexpr std::size_t kOracleMaxConnections = 3;

/// Minimal time until n copies exist, found by enumerating every schedule
/// that starts transfers only at completion instants. At each such instant
/// every free connection of a capable peer either starts a copy towards any
/// peer that neither holds nor is receiving the chunk, or stays idle until
/// the next completion. Receivers with equal upload are interchangeable and
/// explored once.
///
/// `uploads` must be sorted non-increasing. Only one-to-one and one-to-c
/// (c <= 3) are supported, with N <= 6 and n <= 6; larger instances throw
/// std::domain_error.
Rational exhaustive_min_delay(const std::vector<Rational>& uploads, std::size_t n0, std::size_t n,
                              const DiffusionModel& model);
Rational exhaustive_min_delay(const BandwidthProfile& profile, std::size_t n0, std::size_t n,
                              const DiffusionModel& model);

/// Exact greedy curve D(1..n_max) in rational arithmetic (model must not be
/// many-to-one).
std::vector<Rational> exact_greedy_delays(const std::vector<Rational>& uploads, std::size_t n0,
                                          const DiffusionModel& model, std::size_t n_max);

/// Exact many-to-one curve sum_{k=n0}^{n-1} 1/U_k in rational arithmetic.
std::vector<Rational> exact_many_to_one_delays(const std::vector<Rational>& uploads, std::size_t n0,
                                               std::size_t n_max);

}  // namespace hetstream
