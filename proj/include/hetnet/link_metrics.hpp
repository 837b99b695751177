#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/time_reversal.hpp"

namespace hetnet {

/// Per-user transmit powers p_j (not amplitudes), normalized units.
struct PowerVector {
  std::vector<double> p;

  PowerVector() = default;
  explicit PowerVector(std::vector<double> values);
  static PowerVector zeros(std::size_t n) { return PowerVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return p.size(); }
  double operator[](std::size_t i) const { return p[i]; }
  double total() const;
};

struct SinrBreakdown {
  double p_sig = 0.0;
  double p_isi = 0.0;
  double p_co = 0.0;
  double p_cross = 0.0;
  double noise = 0.0;
  double sinr = 0.0;

  double interference_plus_noise() const { return p_isi + p_co + p_cross + noise; }
  double sinr_db() const;
};

SinrBreakdown make_breakdown(double p_sig, double p_isi, double p_co, double p_cross, double noise);

/// Macro user n sampled at 1-based tap `alpha`, interfered by the other MUs'
/// streams and by every femto stream through the FBS->MU links.
SinrBreakdown macro_sinr(std::size_t n, std::size_t alpha, const PowerVector& p0,
                         std::span<const Beamformer> macro_beamformers, std::span<const Beamformer> femto_beamformers,
                         const PowerVector& p1, const ChannelSet& channels, double noise);

/// Actual cross-tier power at femto user j from all macro streams.
double femto_cross_power(std::size_t j, std::span<const Beamformer> macro_beamformers, const PowerVector& p0,
                         const ChannelSet& channels);

/// Femto user j sampled at 1-based tap `sampled_tap` (L for TR). The
/// cross-tier term is supplied by the caller: either femto_cross_power() or a
/// fixed tolerance.
SinrBreakdown femto_sinr(std::size_t j, std::size_t sampled_tap, const PowerVector& p1,
                         std::span<const Beamformer> femto_beamformers, const ChannelSet& channels,
                         double cross_power, double noise);

/// Power-independent coupling coefficients of one tier. Every SINR term is
/// linear in the powers with these coefficients.
struct TierGains {
  std::vector<std::size_t> sampled_tap;    ///< 1-based
  std::vector<double> signal;              ///< |c_jj[tap_j]|^2
  std::vector<double> isi;                 ///< sum over other taps of |c_jj|^2
  std::vector<std::vector<double>> co;     ///< [victim][interferer], zero diagonal
  std::vector<std::vector<double>> cross;  ///< [victim][other-tier user]

  std::size_t users() const { return signal.size(); }
};

/// Gains for the users of `tier`, served by their own BS with `own`
/// beamformers and interfered by the other BS with `other` beamformers.
/// An empty `other` leaves the cross gains empty.
TierGains tier_gains(const ChannelSet& channels, Tier tier, std::span<const Beamformer> own,
                     std::span<const std::size_t> sampled_taps, std::span<const Beamformer> other);

double cross_power(const TierGains& gains, std::size_t user, const PowerVector& other_powers);

SinrBreakdown breakdown(const TierGains& gains, std::size_t user, const PowerVector& powers, double cross,
                        double noise);

}  // namespace hetnet
