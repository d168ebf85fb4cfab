#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hetstream {

/// Tolerance used for every floating-point comparison of delays and capacities.
inline constexpr double kTolerance = 1e-9;

/// Upload capacities of the N peers, in chunks per second, sorted non-increasing.
///
/// Peers are ranked 1..N by capacity; `upload(i)` uses that 1-based rank. Peers
/// beyond N (dummy sinks) have zero upload.
class BandwidthProfile {
 public:
  /// Accepts uploads in any order and sorts them. Throws std::invalid_argument
  /// on an empty list, a negative or non-finite entry, or a null total capacity.
  explicit BandwidthProfile(std::vector<double> uploads);

  std::size_t size() const { return uploads_.size(); }
  std::span<const double> uploads() const { return uploads_; }

  /// Upload of the peer of rank `i` (1-based); zero for i > N.
  double upload(std::size_t i) const { return i >= 1 && i <= uploads_.size() ? uploads_[i - 1] : 0.0; }

  /// U_k: cumulative upload of the k best peers, clamped at U_N for k > N.
  double cumulative(std::size_t k) const;

  double total() const { return prefix_.back(); }
  double mean() const { return total() / static_cast<double>(size()); }
  double max_upload() const { return uploads_.front(); }
  /// Smallest strictly positive upload.
  double min_positive_upload() const;
  /// Number of peers with strictly positive upload.
  std::size_t uploaders() const;

  bool operator==(const BandwidthProfile& other) const { return uploads_ == other.uploads_; }

 private:
  std::vector<double> uploads_;
  std::vector<double> prefix_;  // prefix_[k] = U_k, prefix_[0] = 0
};

/// Returns U_k for 1 <= k <= N; throws std::domain_error otherwise.
double cumulative_bandwidth(const BandwidthProfile& profile, std::size_t k);

/// One bandwidth class: either an explicit peer count or a fraction of N.
struct PeerClass {
  double size = 0.0;
  double upload = 0.0;
};

/// Peer population described by bandwidth classes (u_1 > ... > u_l).
///
/// With `total` set, sizes are fractions of `total` summing to 1; otherwise
/// sizes are integral peer counts.
struct ClassSpec {
  std::vector<PeerClass> classes;
  std::optional<std::size_t> total;

  /// Throws std::invalid_argument if the invariants do not hold.
  void validate() const;
  bool uses_fractions() const { return total.has_value(); }
};

/// Integral peer count of each class. Fractions are apportioned with the
/// largest-remainder rule, ties going to the higher-bandwidth class.
std::vector<std::size_t> class_counts(const ClassSpec& spec);

/// Expands a class spec into a profile. `n` overrides spec.total for
/// fractional specs and must equal the count sum for count specs when given.
BandwidthProfile expand_classes(const ClassSpec& spec, std::optional<std::size_t> n = std::nullopt);

/// Profile with one fast peer and N-1 slow ones that is feasible but forces
/// stream delays linear in N under one-to-one diffusion.
BandwidthProfile generate_adversarial(std::size_t n, std::size_t n0, double excess, double rate);

struct ManyToOne {
  bool operator==(const ManyToOne&) const = default;
};
struct OneToOne {
  bool operator==(const OneToOne&) const = default;
};
struct OneToSome {
  std::size_t c = 1;
  bool operator==(const OneToSome&) const = default;
};

/// Collaboration rule for a single chunk transfer.
using DiffusionModel = std::variant<ManyToOne, OneToOne, OneToSome>;

/// Number of parallel connections per sender: 1 for one-to-one, c for one-to-c.
/// Throws std::invalid_argument for many-to-one or c == 0.
std::size_t connections(const DiffusionModel& model);
bool is_many_to_one(const DiffusionModel& model);
std::string to_string(const DiffusionModel& model);
/// Parses "m", "1", "c" (with `c`) or "many-to-one"/"one-to-one"/"one-to-c".
DiffusionModel parse_model(const std::string& name, std::size_t c = 1);

struct InjectionConfig {
  std::size_t n0 = 1;
};

struct StreamConfig {
  double rate = 1.0;  // s, chunks per second
  std::size_t n0 = 1;

  void validate() const;
};

}  // namespace hetstream
