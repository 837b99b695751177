#include "hetnet/time_reversal.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/error.hpp"

namespace hetnet {

double Beamformer::energy() const {
  double e = 0.0;
  for (const auto& taps : per_antenna)
    for (const auto& t : taps) e += std::norm(t);
  return e;
}

double EquivalentChannel::energy() const {
  double e = 0.0;
  for (const auto& t : taps) e += std::norm(t);
  return e;
}

Beamformer tr_prefilter(std::span<const Cir> cirs, std::size_t user) {
  if (cirs.empty()) throw InvalidInput("time reversal needs at least one antenna");
  const std::size_t L = cirs.front().size();
  double energy = 0.0;
  for (const auto& h : cirs) {
    if (h.size() != L) throw InvalidInput("CIR lengths differ across antennas");
    energy += h.energy();
  }
  if (!(energy > 0.0)) throw DegenerateChannel("all-zero channel cannot be time-reversed");
  const double scale = 1.0 / std::sqrt(energy);

  Beamformer bf;
  bf.user = user;
  bf.kind = BeamformerKind::kTimeReversal;
  bf.per_antenna.reserve(cirs.size());
  for (const auto& h : cirs) {
    std::vector<cplx> g(L);
    for (std::size_t l = 0; l < L; ++l) g[l] = std::conj(h.taps[L - 1 - l]) * scale;
    bf.per_antenna.push_back(std::move(g));
  }
  return bf;
}

EquivalentChannel equivalent_channel(std::span<const cplx> prefilter, const Cir& cir) {
  const std::size_t L = cir.size();
  if (prefilter.size() != L) throw InvalidInput("prefilter and CIR lengths differ");
  if (L == 0) throw InvalidInput("empty CIR");
  EquivalentChannel out{std::vector<cplx>(2 * L - 1)};
  for (std::size_t s = 0; s < 2 * L - 1; ++s) {
    const std::size_t first = s < L ? 0 : s - L + 1;
    const std::size_t last = std::min(s, L - 1);
    cplx acc{};
    for (std::size_t a = first; a <= last; ++a) acc += prefilter[a] * cir.taps[s - a];
    out.taps[s] = acc;
  }
  return out;
}

EquivalentChannel composite_channel(const Beamformer& beamformer, std::span<const Cir> cirs) {
  if (beamformer.antennas() != cirs.size()) throw InvalidInput("beamformer and channel antenna counts differ");
  if (cirs.empty()) throw InvalidInput("no antennas");
  EquivalentChannel sum{std::vector<cplx>(2 * cirs.front().size() - 1)};
  for (std::size_t i = 0; i < cirs.size(); ++i) {
    const auto part = equivalent_channel(beamformer.per_antenna[i], cirs[i]);
    if (part.size() != sum.size()) throw InvalidInput("CIR lengths differ across antennas");
    for (std::size_t t = 0; t < sum.size(); ++t) sum.taps[t] += part.taps[t];
  }
  return sum;
}

FocusingReport focusing_report(const EquivalentChannel& composite) {
  const std::size_t centre = (composite.size() + 1) / 2;
  FocusingReport r;
  r.peak_power = std::norm(composite.at(centre));
  for (std::size_t t = 1; t <= composite.size(); ++t)
    if (t != centre) r.isi_power += std::norm(composite.at(t));
  const double total = r.peak_power + r.isi_power;
  r.peak_to_total_ratio = total > 0.0 ? r.peak_power / total : 0.0;
  return r;
}

FocusingReport focusing_report(const ChannelSet& channels, std::span<const Beamformer> femto_beamformers,
                               std::size_t user) {
  if (user >= femto_beamformers.size()) throw InvalidInput("femto user out of range");
  const auto cirs = channels.towards(kFemto, kFemto, user);
  return focusing_report(composite_channel(femto_beamformers[user], cirs));
}

std::vector<Beamformer> femto_tr_beamformers(const ChannelSet& channels) {
  std::vector<Beamformer> out;
  out.reserve(channels.users(kFemto));
  for (std::size_t j = 0; j < channels.users(kFemto); ++j)
    out.push_back(tr_prefilter(channels.towards(kFemto, kFemto, j), j));
  return out;
}

}  // namespace hetnet
