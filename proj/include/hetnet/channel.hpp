#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hetnet {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

/// Power-delay profile of a tapped delay line.
struct PdpProfile {
  std::string name;
  std::vector<double> tap_delays_ns;
  std::vector<double> tap_powers_db;

  std::size_t size() const { return tap_delays_ns.size(); }
  /// Throws InvalidInput unless delays start at 0, increase strictly, and powers are finite.
  void validate() const;
};

/// ITU-R M.1225 Indoor Office A.
PdpProfile itu_indoor_a();
/// ITU-R M.1225 Vehicular A.
PdpProfile itu_vehicular_a();

/// Built-in name ("itu_indoor_a", "itu_vehicular_a") or path to a JSON file
/// with keys name, delays_ns, powers_db.
PdpProfile load_profile(const std::string& name_or_path);
PdpProfile parse_profile_json(const std::string& text);

/// How physical paths become discrete taps.
enum class TapMapping {
  kPerPath,  ///< path l -> tap l; the profile must have exactly L paths
  kSampled,  ///< nearest bin at a fixed sample period, colliding powers summed, truncated/padded to L
};

/// Mean linear power of each of the L discrete taps (pathloss excluded).
std::vector<double> tap_mean_powers(const PdpProfile& profile, std::size_t taps,
                                    TapMapping mapping, double sample_period_ns = 50.0);

/// Discrete channel impulse response; tap 0 is the first arrival.
struct Cir {
  std::vector<cplx> taps;

  std::size_t size() const { return taps.size(); }
  double energy() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};
double distance(Point a, Point b);

struct Geometry {
  Point mbs;
  Point fbs;
  std::vector<Point> mu;
  std::vector<Point> fu;
};

/// Parameters that shape one drop's geometry and channels.
struct ChannelConfig {
  std::size_t taps = 6;
  std::size_t macro_antennas = 4;
  std::size_t femto_antennas = 4;
  std::size_t macro_users = 2;
  std::size_t femto_users = 2;
  double macro_radius_m = 200.0;
  double femto_radius_m = 10.0;
  double mbs_fbs_distance_m = 100.0;
  /// When set, every FU sits at exactly this distance from the FBS (uniform angle).
  std::optional<double> fu_fixed_distance_m;
  double exponent_outdoor = 4.0;
  double exponent_indoor = 3.0;
  double exponent_cross = 3.5;
  PdpProfile macro_profile = itu_vehicular_a();
  PdpProfile femto_profile = itu_indoor_a();
  PdpProfile cross_profile = itu_indoor_a();
  TapMapping mapping = TapMapping::kPerPath;
  double sample_period_ns = 50.0;
};

/// MBS at the origin, FBS on the MBS-FBS circle, users uniform on their disks.
Geometry drop_users(const ChannelConfig& config, Rng& rng);

/// (1 m / max(d, 1 m))^exponent.
double pathloss_gain(double distance_m, double exponent);

/// Independent circularly-symmetric Gaussian taps, tap l with variance pathloss * mean_powers[l].
Cir generate_cir(std::span<const double> tap_mean_powers, double pathloss, Rng& rng);
Cir generate_cir(const PdpProfile& profile, std::size_t taps, double pathloss, Rng& rng,
                 TapMapping mapping = TapMapping::kPerPath, double sample_period_ns = 50.0);

enum Tier : std::size_t { kMacro = 0, kFemto = 1 };

/// All CIRs of one drop, h(k, r, i, j): antenna i of BS k towards user j of tier r.
class ChannelSet {
 public:
  ChannelSet() = default;
  ChannelSet(std::size_t taps, std::array<std::size_t, 2> antennas, std::array<std::size_t, 2> users);

  std::size_t taps() const { return taps_; }
  std::size_t antennas(std::size_t bs) const { return antennas_[bs]; }
  std::size_t users(std::size_t tier) const { return users_[tier]; }

  Cir& at(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user);
  const Cir& at(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user) const;

  /// The M_bs CIRs from every antenna of `bs` to one user.
  std::vector<Cir> towards(std::size_t bs, std::size_t tier, std::size_t user) const;
  std::size_t link_count() const;
  /// Multiply every tap of every link from `bs` to `tier` by `factor`.
  void scale(std::size_t bs, std::size_t tier, cplx factor);

 private:
  std::size_t index(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user) const;

  std::size_t taps_ = 0;
  std::array<std::size_t, 2> antennas_{};
  std::array<std::size_t, 2> users_{};
  std::array<std::array<std::vector<Cir>, 2>, 2> links_;
};

ChannelSet build_channel_set(const Geometry& geometry, const ChannelConfig& config, Rng& rng);

/// Independent stream for one drop, derived from (seed, drop_index) only.
Rng drop_rng(std::uint64_t seed, std::uint64_t drop_index);

}  // namespace hetnet
