#include "hetstream/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "hetstream/distributions.hpp"
#include "hetstream/single_chunk.hpp"

namespace hetstream {

std::string_view name(Inequality inequality) {
  switch (inequality) {
    case Inequality::kDmAboveFastestHomogeneous: return "dm_above_fastest_homogeneous";
    case Inequality::kDmBelowMeanHomogeneous: return "dm_below_mean_homogeneous";
    case Inequality::kDmLogGain: return "dm_log_gain";
    case Inequality::kDmBelowD1: return "dm_below_d1";
    case Inequality::kD1BelowDc: return "d1_below_dc";
    case Inequality::kD1SharpConjecture: return "d1_sharp_conjecture";
    case Inequality::kD1LooseBound: return "d1_loose_bound";
    case Inequality::kDcSharpConjecture: return "dc_sharp_conjecture";
    case Inequality::kDcLooseBound: return "dc_loose_bound";
    case Inequality::kD1HomogeneousGain: return "d1_homogeneous_gain";
    case Inequality::kDcLogGain: return "dc_log_gain";
    case Inequality::kDcHomogeneousGain: return "dc_homogeneous_gain";
  }
  return "unknown";
}

BoundStatus status(Inequality inequality) {
  switch (inequality) {
    case Inequality::kD1SharpConjecture:
    case Inequality::kDcSharpConjecture:
    case Inequality::kD1HomogeneousGain:  // follows from the D_1 conjecture
      return BoundStatus::kConjecture;
    case Inequality::kDcLogGain:
    case Inequality::kDcHomogeneousGain:
      return BoundStatus::kInformational;
    default:
      return BoundStatus::kProven;
  }
}

ViolationTally BoundReport::tally(Inequality inequality) const {
  ViolationTally t;
  bool any = false;
  for (const auto& row : rows) {
    const auto& chk = row.check(inequality);
    if (!chk.applicable) continue;
    ++t.evaluated;
    const double excess = chk.lhs - chk.rhs;
    if (!any || excess > t.worst_excess) t.worst_excess = excess;
    any = true;
    if (!chk.satisfied) {
      if (t.violations == 0) t.first_violation_n = row.n;
      ++t.violations;
    }
  }
  return t;
}

bool BoundReport::proven_bounds_hold() const {
  for (std::size_t k = 0; k < kInequalityCount; ++k) {
    const auto inequality = static_cast<Inequality>(k);
    if (status(inequality) == BoundStatus::kProven && tally(inequality).violations > 0) return false;
  }
  return true;
}

BoundReport evaluate_bounds(const BandwidthProfile& profile, std::size_t n0, std::size_t c, std::size_t n_max) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  const std::size_t peers = profile.size();
  const double mean = profile.mean();
  const auto fastest = homogeneous(profile.max_upload(), peers);
  const auto averaged = homogeneous(mean, peers);

  const auto dm = delay_many_to_one(profile, n0, n_max);
  const auto d1 = delay_one_to_one(profile, n0, n_max);
  const auto dc = delay_one_to_c(profile, n0, c, n_max);
  const auto dm_fastest = delay_many_to_one(fastest, n0, n_max);
  const auto dm_mean = delay_many_to_one(averaged, n0, n_max);
  const auto d1_mean = delay_one_to_one(averaged, n0, n_max);
  const auto dc_mean = delay_one_to_c(averaged, n0, c, n_max);

  const double cd = static_cast<double>(c);
  const double n0d = static_cast<double>(n0);
  const double head = n0d / profile.cumulative(n0);  // n0 / U_{n0}

  BoundReport report{peers, n0, c, {}};
  report.rows.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    row.dm = dm.at(n);
    row.d1 = d1.at(n);
    row.dc = dc.at(n);
    row.dm_fastest = dm_fastest.at(n);
    row.dm_mean = dm_mean.at(n);
    row.d1_mean = d1_mean.at(n);
    row.dc_mean = dc_mean.at(n);

    const bool within_population = n <= peers;
    const double nd = static_cast<double>(n);
    auto set = [&](Inequality which, double lhs, double rhs, bool applicable) {
      auto& chk = row.checks[static_cast<std::size_t>(which)];
      chk.lhs = lhs;
      chk.rhs = rhs;
      chk.applicable = applicable;
      chk.satisfied = !applicable || lhs <= rhs + kTolerance;
    };
    set(Inequality::kDmAboveFastestHomogeneous, row.dm_fastest, row.dm, true);
    set(Inequality::kDmBelowMeanHomogeneous, row.dm, row.dm_mean, true);
    const bool log_gain_defined = n > n0 && within_population;
    set(Inequality::kDmLogGain, row.dm,
        log_gain_defined ? (std::log((nd - 1.0) / n0d) + 1.0 / n0d) / mean : 0.0, log_gain_defined);
    set(Inequality::kDmBelowD1, row.dm, row.d1, true);
    set(Inequality::kD1BelowDc, row.d1, row.dc, true);
    set(Inequality::kD1SharpConjecture, row.d1, head + row.dm / std::log(2.0), true);
    set(Inequality::kD1LooseBound, row.d1, head + 2.0 * row.dm, true);
    set(Inequality::kDcSharpConjecture, row.dc, cd * head + cd / std::log1p(cd) * row.dm, true);
    set(Inequality::kDcLooseBound, row.dc, cd * head + (cd + 1.0) * row.dm, true);
    set(Inequality::kD1HomogeneousGain, row.d1, 1.0 / mean + row.d1_mean, within_population);
    const bool log_c_defined = c >= 2 && within_population && n >= n0;
    set(Inequality::kDcLogGain, row.dc, log_c_defined ? cd * head + std::log(nd / n0d) / std::log(cd) : 0.0,
        log_c_defined);
    set(Inequality::kDcHomogeneousGain, row.dc, cd / mean + row.dc_mean, within_population);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace hetstream
