#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hetstream/profile.hpp"

namespace hetstream {

/// Minimal single-chunk delays D(n), n = 1..n_max, for one model and n0.
struct DelayCurve {
  DiffusionModel model;
  std::size_t n0 = 1;
  std::vector<double> delays;  // delays[n - 1] = D(n)

  std::size_t n_max() const { return delays.size(); }
  /// D(n) for 1 <= n <= n_max.
  double at(std::size_t n) const;
  double final_delay() const { return delays.back(); }
};

/// Closed form for pooled (many-to-one) diffusion: D_m(n) = sum_{k=n0}^{n-1} 1/U_k.
DelayCurve delay_many_to_one(const BandwidthProfile& profile, std::size_t n0, std::size_t n_max);
DelayCurve delay_one_to_one(const BandwidthProfile& profile, std::size_t n0, std::size_t n_max);
DelayCurve delay_one_to_c(const BandwidthProfile& profile, std::size_t n0, std::size_t c, std::size_t n_max);
DelayCurve delay_curve(const BandwidthProfile& profile, const DiffusionModel& model, std::size_t n0,
                       std::size_t n_max);

// Closed-form approximations. None of these is exact; they are reported
// next to the exact curves, never in place of them.

struct HomogeneousApprox {
  double harmonic;     // (1/u) sum_{k=n0}^{n-1} 1/k, exact for n <= N
  double logarithmic;  // ln(n/n0)/u
};
HomogeneousApprox approx_homogeneous_dm(double upload, std::size_t n0, std::size_t n);

struct ClassChainApprox {
  double total;
  double first_class;               // (1/u_1) ln(n_1/n0)
  std::vector<double> transitions;  // D_{i-1 -> i} for i = 2..l
};
/// Class-chain approximation of D_m(N) for a population made of bandwidth classes.
ClassChainApprox approx_classes_dm(const ClassSpec& spec, std::size_t n0);
/// Simplification of the class chain when the first class dominates capacity.
ClassChainApprox approx_dominant_class(const ClassSpec& spec, std::size_t n0);

struct FreeRiderApprox {
  double value;
  double logarithmic_term;
  double linear_term;
  // linear_term divides by N*u; the dominant-class form would divide by n1*u.
  double linear_term_n1u;
  std::string note;
};
FreeRiderApprox approx_free_riders(std::size_t n1, double upload, std::size_t population, std::size_t n0,
                                   std::size_t copies);

}  // namespace hetstream
