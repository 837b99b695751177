#include "hetnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hetnet/error.hpp"

namespace hetnet {

void PdpProfile::validate() const {
  if (tap_delays_ns.empty()) throw InvalidInput("profile '" + name + "' has no taps");
  if (tap_delays_ns.size() != tap_powers_db.size())
    throw InvalidInput("profile '" + name + "': delays_ns and powers_db differ in length");
  if (tap_delays_ns.front() != 0.0) throw InvalidInput("profile '" + name + "': first delay must be 0");
  for (std::size_t l = 1; l < tap_delays_ns.size(); ++l) {
    if (!(tap_delays_ns[l] > tap_delays_ns[l - 1]))
      throw InvalidInput("profile '" + name + "': delays must increase strictly");
  }
  for (double p : tap_powers_db) {
    if (!std::isfinite(p)) throw InvalidInput("profile '" + name + "': tap powers must be finite");
  }
}

PdpProfile itu_indoor_a() {
  return {"itu_indoor_a", {0, 50, 110, 170, 290, 310}, {0, -3, -10, -18, -26, -32}};
}

PdpProfile itu_vehicular_a() {
  return {"itu_vehicular_a", {0, 310, 710, 1090, 1730, 2510}, {0, -1, -9, -10, -15, -20}};
}

PdpProfile parse_profile_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  PdpProfile p;
  try {
    p.name = j.at("name").get<std::string>();
    p.tap_delays_ns = j.at("delays_ns").get<std::vector<double>>();
    p.tap_powers_db = j.at("powers_db").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  try {
    p.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  return p;
}

PdpProfile load_profile(const std::string& name_or_path) {
  if (name_or_path == "itu_indoor_a") return itu_indoor_a();
  if (name_or_path == "itu_vehicular_a") return itu_vehicular_a();
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("unknown profile '" + name_or_path + "' (not built in, file not readable)");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_profile_json(ss.str());
}

std::vector<double> tap_mean_powers(const PdpProfile& profile, std::size_t taps, TapMapping mapping,
                                    double sample_period_ns) {
  profile.validate();
  if (taps == 0) throw InvalidInput("tap count must be positive");
  std::vector<double> out(taps, 0.0);
  if (mapping == TapMapping::kPerPath) {
    if (profile.size() != taps)
      throw InvalidInput("profile '" + profile.name + "' has " + std::to_string(profile.size()) +
                         " paths, expected " + std::to_string(taps));
    for (std::size_t l = 0; l < taps; ++l) out[l] = std::pow(10.0, profile.tap_powers_db[l] / 10.0);
    return out;
  }
  if (!(sample_period_ns > 0.0)) throw InvalidInput("sample period must be positive");
  for (std::size_t l = 0; l < profile.size(); ++l) {
    const auto bin = static_cast<std::size_t>(std::llround(profile.tap_delays_ns[l] / sample_period_ns));
    if (bin < taps) out[bin] += std::pow(10.0, profile.tap_powers_db[l] / 10.0);
  }
  return out;
}

double Cir::energy() const {
  double e = 0.0;
  for (const auto& t : taps) e += std::norm(t);
  return e;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

Point uniform_in_disk(Point centre, double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double theta = 2.0 * std::numbers::pi * u(rng);
  return {centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
}

Point on_circle(Point centre, double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double theta = 2.0 * std::numbers::pi * u(rng);
  return {centre.x + radius * std::cos(theta), centre.y + radius * std::sin(theta)};
}

}  // namespace

Geometry drop_users(const ChannelConfig& config, Rng& rng) {
  Geometry g;
  g.mbs = {0.0, 0.0};
  g.fbs = on_circle(g.mbs, config.mbs_fbs_distance_m, rng);
  g.mu.reserve(config.macro_users);
  for (std::size_t n = 0; n < config.macro_users; ++n) g.mu.push_back(uniform_in_disk(g.mbs, config.macro_radius_m, rng));
  g.fu.reserve(config.femto_users);
  for (std::size_t j = 0; j < config.femto_users; ++j) {
    g.fu.push_back(config.fu_fixed_distance_m ? on_circle(g.fbs, *config.fu_fixed_distance_m, rng)
                                              : uniform_in_disk(g.fbs, config.femto_radius_m, rng));
  }
  return g;
}

double pathloss_gain(double distance_m, double exponent) {
  if (!(distance_m > 0.0)) throw InvalidInput("pathloss distance must be positive");
  if (!(exponent > 0.0)) throw InvalidInput("pathloss exponent must be positive");
  constexpr double kReference = 1.0;
  return std::pow(kReference / std::max(distance_m, kReference), exponent);
}

Cir generate_cir(std::span<const double> tap_mean_powers, double pathloss, Rng& rng) {
  if (!(pathloss > 0.0)) throw InvalidInput("pathloss gain must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Cir h;
  h.taps.resize(tap_mean_powers.size());
  for (std::size_t l = 0; l < tap_mean_powers.size(); ++l) {
    const double sigma = std::sqrt(pathloss * tap_mean_powers[l] / 2.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    h.taps[l] = {sigma * re, sigma * im};
  }
  return h;
}

Cir generate_cir(const PdpProfile& profile, std::size_t taps, double pathloss, Rng& rng, TapMapping mapping,
                 double sample_period_ns) {
  const auto powers = tap_mean_powers(profile, taps, mapping, sample_period_ns);
  return generate_cir(powers, pathloss, rng);
}

ChannelSet::ChannelSet(std::size_t taps, std::array<std::size_t, 2> antennas, std::array<std::size_t, 2> users)
    : taps_(taps), antennas_(antennas), users_(users) {
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t r = 0; r < 2; ++r) {
      links_[k][r].assign(antennas_[k] * users_[r], Cir{std::vector<cplx>(taps_)});
    }
  }
}

std::size_t ChannelSet::index(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user) const {
  if (bs > 1 || tier > 1 || antenna >= antennas_[bs] || user >= users_[tier])
    throw InvalidInput("channel index out of range");
  return antenna * users_[tier] + user;
}

Cir& ChannelSet::at(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user) {
  return links_[bs][tier][index(bs, tier, antenna, user)];
}

const Cir& ChannelSet::at(std::size_t bs, std::size_t tier, std::size_t antenna, std::size_t user) const {
  return links_[bs][tier][index(bs, tier, antenna, user)];
}

std::vector<Cir> ChannelSet::towards(std::size_t bs, std::size_t tier, std::size_t user) const {
  std::vector<Cir> out;
  out.reserve(antennas_[bs]);
  for (std::size_t i = 0; i < antennas_[bs]; ++i) out.push_back(at(bs, tier, i, user));
  return out;
}

std::size_t ChannelSet::link_count() const {
  std::size_t n = 0;
  for (const auto& row : links_)
    for (const auto& block : row) n += block.size();
  return n;
}

void ChannelSet::scale(std::size_t bs, std::size_t tier, cplx factor) {
  for (auto& h : links_[bs][tier])
    for (auto& t : h.taps) t *= factor;
}

ChannelSet build_channel_set(const Geometry& geometry, const ChannelConfig& config, Rng& rng) {
  const std::size_t L = config.taps;
  const auto macro_pdp = tap_mean_powers(config.macro_profile, L, config.mapping, config.sample_period_ns);
  const auto femto_pdp = tap_mean_powers(config.femto_profile, L, config.mapping, config.sample_period_ns);
  const auto cross_pdp = tap_mean_powers(config.cross_profile, L, config.mapping, config.sample_period_ns);

  if (geometry.mu.size() != config.macro_users || geometry.fu.size() != config.femto_users)
    throw InvalidInput("geometry does not match the configured user counts");

  ChannelSet set(L, {config.macro_antennas, config.femto_antennas}, {config.macro_users, config.femto_users});

  // Fixed generation order: (bs, tier, user, antenna).
  const auto fill = [&](std::size_t bs, std::size_t tier, Point origin, const std::vector<Point>& users,
                        const std::vector<double>& pdp, double exponent) {
    for (std::size_t j = 0; j < users.size(); ++j) {
      const double gain = pathloss_gain(distance(origin, users[j]), exponent);
      for (std::size_t i = 0; i < set.antennas(bs); ++i) set.at(bs, tier, i, j) = generate_cir(pdp, gain, rng);
    }
  };
  fill(kMacro, kMacro, geometry.mbs, geometry.mu, macro_pdp, config.exponent_outdoor);
  fill(kFemto, kFemto, geometry.fbs, geometry.fu, femto_pdp, config.exponent_indoor);
  fill(kMacro, kFemto, geometry.mbs, geometry.fu, cross_pdp, config.exponent_cross);
  fill(kFemto, kMacro, geometry.fbs, geometry.mu, cross_pdp, config.exponent_cross);
  return set;
}

Rng drop_rng(std::uint64_t seed, std::uint64_t drop_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(drop_index), static_cast<std::uint32_t>(drop_index >> 32),
                    0x68657476u};
  return Rng(seq);
}

}  // namespace hetnet
