#include "hetnet/link_metrics.hpp"

#include <cmath>
#include <limits>

#include "hetnet/error.hpp"

namespace hetnet {

PowerVector::PowerVector(std::vector<double> values) : p(std::move(values)) {
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("powers must be finite and non-negative");
  }
}

double PowerVector::total() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

double SinrBreakdown::sinr_db() const {
  return sinr > 0.0 ? 10.0 * std::log10(sinr) : -std::numeric_limits<double>::infinity();
}

SinrBreakdown make_breakdown(double p_sig, double p_isi, double p_co, double p_cross, double noise) {
  SinrBreakdown b{p_sig, p_isi, p_co, p_cross, noise, 0.0};
  const double denom = b.interference_plus_noise();
  b.sinr = denom > 0.0 ? p_sig / denom : (p_sig > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return b;
}

namespace {

void split_at(const EquivalentChannel& c, std::size_t tap, double& at_tap, double& elsewhere) {
  if (tap < 1 || tap > c.size()) throw InvalidInput("sampled tap out of range");
  at_tap = std::norm(c.at(tap));
  elsewhere = 0.0;
  for (std::size_t t = 1; t <= c.size(); ++t)
    if (t != tap) elsewhere += std::norm(c.at(t));
}

void check_user(std::size_t user, std::size_t count, std::size_t powers, std::size_t beamformers) {
  if (user >= count) throw InvalidInput("user index out of range");
  if (powers != count || beamformers != count) throw InvalidInput("power/beamformer count does not match users");
}

}  // namespace

SinrBreakdown macro_sinr(std::size_t n, std::size_t alpha, const PowerVector& p0,
                         std::span<const Beamformer> macro_beamformers, std::span<const Beamformer> femto_beamformers,
                         const PowerVector& p1, const ChannelSet& channels, double noise) {
  check_user(n, channels.users(kMacro), p0.size(), macro_beamformers.size());
  if (p1.size() != femto_beamformers.size() || p1.size() != channels.users(kFemto))
    throw InvalidInput("femto power/beamformer count does not match users");

  const auto to_n = channels.towards(kMacro, kMacro, n);
  double sig = 0.0, isi = 0.0;
  split_at(composite_channel(macro_beamformers[n], to_n), alpha, sig, isi);

  double co = 0.0;
  for (std::size_t other = 0; other < macro_beamformers.size(); ++other) {
    if (other == n) continue;
    co += p0[other] * composite_channel(macro_beamformers[other], to_n).energy();
  }
  double cross = 0.0;
  const auto fbs_to_n = channels.towards(kFemto, kMacro, n);
  for (std::size_t j = 0; j < femto_beamformers.size(); ++j)
    cross += p1[j] * composite_channel(femto_beamformers[j], fbs_to_n).energy();

  return make_breakdown(p0[n] * sig, p0[n] * isi, co, cross, noise);
}

double femto_cross_power(std::size_t j, std::span<const Beamformer> macro_beamformers, const PowerVector& p0,
                         const ChannelSet& channels) {
  if (j >= channels.users(kFemto)) throw InvalidInput("femto user out of range");
  if (p0.size() != macro_beamformers.size()) throw InvalidInput("macro power/beamformer count mismatch");
  const auto mbs_to_j = channels.towards(kMacro, kFemto, j);
  double cross = 0.0;
  for (std::size_t n = 0; n < macro_beamformers.size(); ++n)
    cross += p0[n] * composite_channel(macro_beamformers[n], mbs_to_j).energy();
  return cross;
}

SinrBreakdown femto_sinr(std::size_t j, std::size_t sampled_tap, const PowerVector& p1,
                         std::span<const Beamformer> femto_beamformers, const ChannelSet& channels,
                         double cross_power, double noise) {
  check_user(j, channels.users(kFemto), p1.size(), femto_beamformers.size());
  if (!(cross_power >= 0.0)) throw InvalidInput("cross-tier power must be non-negative");
  const auto to_j = channels.towards(kFemto, kFemto, j);
  double sig = 0.0, isi = 0.0;
  split_at(composite_channel(femto_beamformers[j], to_j), sampled_tap, sig, isi);
  double co = 0.0;
  for (std::size_t other = 0; other < femto_beamformers.size(); ++other) {
    if (other == j) continue;
    co += p1[other] * composite_channel(femto_beamformers[other], to_j).energy();
  }
  return make_breakdown(p1[j] * sig, p1[j] * isi, co, cross_power, noise);
}

TierGains tier_gains(const ChannelSet& channels, Tier tier, std::span<const Beamformer> own,
                     std::span<const std::size_t> sampled_taps, std::span<const Beamformer> other) {
  const Tier other_tier = tier == kMacro ? kFemto : kMacro;
  const std::size_t users = channels.users(tier);
  if (own.size() != users || sampled_taps.size() != users) throw InvalidInput("one beamformer and tap per user");
  if (!other.empty() && other.size() != channels.users(other_tier))
    throw InvalidInput("one other-tier beamformer per user");

  TierGains g;
  g.sampled_tap.assign(sampled_taps.begin(), sampled_taps.end());
  g.signal.resize(users);
  g.isi.resize(users);
  g.co.assign(users, std::vector<double>(users, 0.0));
  g.cross.assign(users, std::vector<double>(other.size(), 0.0));
  for (std::size_t v = 0; v < users; ++v) {
    const auto own_links = channels.towards(tier, tier, v);
    split_at(composite_channel(own[v], own_links), sampled_taps[v], g.signal[v], g.isi[v]);
    for (std::size_t u = 0; u < users; ++u)
      if (u != v) g.co[v][u] = composite_channel(own[u], own_links).energy();
    const auto cross_links = channels.towards(other_tier, tier, v);
    for (std::size_t u = 0; u < other.size(); ++u) g.cross[v][u] = composite_channel(other[u], cross_links).energy();
  }
  return g;
}

double cross_power(const TierGains& gains, std::size_t user, const PowerVector& other_powers) {
  if (user >= gains.users()) throw InvalidInput("user index out of range");
  if (other_powers.size() != gains.cross[user].size()) throw InvalidInput("other-tier power count mismatch");
  double s = 0.0;
  for (std::size_t u = 0; u < other_powers.size(); ++u) s += gains.cross[user][u] * other_powers[u];
  return s;
}

SinrBreakdown breakdown(const TierGains& gains, std::size_t user, const PowerVector& powers, double cross,
                        double noise) {
  if (user >= gains.users()) throw InvalidInput("user index out of range");
  if (powers.size() != gains.users()) throw InvalidInput("power count mismatch");
  double co = 0.0;
  for (std::size_t u = 0; u < powers.size(); ++u)
    if (u != user) co += gains.co[user][u] * powers[u];
  return make_breakdown(powers[user] * gains.signal[user], powers[user] * gains.isi[user], co, cross, noise);
}

}  // namespace hetnet
