#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hetnet/channel.hpp"

namespace hetnet {

enum class BeamformerKind { kTimeReversal, kZeroForcing };

/// Per-antenna length-L prefilters for one user. Aggregate energy over all
/// antennas is 1.
struct Beamformer {
  std::size_t user = 0;
  BeamformerKind kind = BeamformerKind::kTimeReversal;
  std::vector<std::vector<cplx>> per_antenna;

  std::size_t antennas() const { return per_antenna.size(); }
  double energy() const;
};

/// Convolution of a length-L prefilter with a length-L CIR: 2L-1 taps.
/// Tap positions in the public API are 1-based; the TR focusing tap is L.
struct EquivalentChannel {
  std::vector<cplx> taps;

  std::size_t size() const { return taps.size(); }
  cplx at(std::size_t tap) const { return taps.at(tap - 1); }
  double energy() const;
};

/// g_i[l] = conj(h_i[L+1-l]) / sqrt(sum_i ||h_i||^2). Throws DegenerateChannel
/// if every CIR is zero.
Beamformer tr_prefilter(std::span<const Cir> cirs, std::size_t user = 0);

/// Throws InvalidInput if the two lengths differ.
EquivalentChannel equivalent_channel(std::span<const cplx> prefilter, const Cir& cir);

/// sum_i beamformer_i * cirs_i, the channel seen by the receiver at the end of `cirs`.
EquivalentChannel composite_channel(const Beamformer& beamformer, std::span<const Cir> cirs);

struct FocusingReport {
  double peak_power = 0.0;
  double isi_power = 0.0;
  double peak_to_total_ratio = 0.0;
};

/// Energy at the centre tap L versus the remaining taps.
FocusingReport focusing_report(const EquivalentChannel& composite);
/// Femto user `user` observing its own TR beamformer.
FocusingReport focusing_report(const ChannelSet& channels, std::span<const Beamformer> femto_beamformers,
                               std::size_t user);

/// TR beamformers for every femto user of the drop.
std::vector<Beamformer> femto_tr_beamformers(const ChannelSet& channels);

}  // namespace hetnet
