#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "hetstream/profile.hpp"

namespace hetstream {

/// Inequalities relating the exact single-chunk delays to each other and to
/// homogeneous-equivalent systems.
enum class Inequality {
  kDmAboveFastestHomogeneous,  // D_m^{u_max}(n) <= D_m(n)
  kDmBelowMeanHomogeneous,     // D_m(n) <= D_m^{mean u}(n)
  kDmLogGain,                  // D_m(n) < (ln((n-1)/n0) + 1/n0) / mean u, for n0 < n <= N
  kDmBelowD1,                  // D_m(n) <= D_1(n)
  kD1BelowDc,                  // D_1(n) <= D_c(n)
  kD1SharpConjecture,          // D_1 < n0/U_n0 + D_m/ln 2
  kD1LooseBound,               // D_1 < n0/U_n0 + 2 D_m
  kDcSharpConjecture,          // D_c < c n0/U_n0 + c/ln(1+c) D_m
  kDcLooseBound,               // D_c < c n0/U_n0 + (c+1) D_m
  kD1HomogeneousGain,          // D_1(n) < 1/mean u + D_1^{mean u}(n), for n <= N
  kDcLogGain,                  // D_c(n) < c n0/U_n0 + log_c(n/n0), for c >= 2, n <= N
  kDcHomogeneousGain,          // D_c(n) < c/mean u + D_c^{mean u}(n), for n <= N
};
inline constexpr std::size_t kInequalityCount = 12;

enum class BoundStatus {
  kProven,         // a violation is a defect
  kConjecture,     // a violation is a finding to report
  kInformational,  // evaluated and reported only
};

std::string_view name(Inequality inequality);
BoundStatus status(Inequality inequality);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = false;
  bool satisfied = true;  // lhs <= rhs + kTolerance, or not applicable
};

struct BoundRow {
  std::size_t n = 0;
  double dm = 0.0;
  double d1 = 0.0;
  double dc = 0.0;
  double dm_fastest = 0.0;  // D_m of the homogeneous system at u_max
  double dm_mean = 0.0;     // D_m of the homogeneous system at the mean upload
  double d1_mean = 0.0;
  double dc_mean = 0.0;
  std::array<BoundCheck, kInequalityCount> checks{};

  const BoundCheck& check(Inequality inequality) const { return checks[static_cast<std::size_t>(inequality)]; }
};

struct ViolationTally {
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  std::size_t first_violation_n = 0;  // 0 when none
  double worst_excess = 0.0;          // max(lhs - rhs) over applicable rows
};

struct BoundReport {
  std::size_t peers = 0;
  std::size_t n0 = 1;
  std::size_t c = 1;
  std::vector<BoundRow> rows;  // rows[n - 1]

  ViolationTally tally(Inequality inequality) const;
  /// True when every proven inequality holds on every row.
  bool proven_bounds_hold() const;
};

/// Evaluates every inequality at n = 1..n_max for the given profile.
BoundReport evaluate_bounds(const BandwidthProfile& profile, std::size_t n0, std::size_t c, std::size_t n_max);

}  // namespace hetstream
