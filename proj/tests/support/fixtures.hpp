#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/scenario.hpp"
#include "oracles.hpp"

namespace fixture {

using hetnet::cplx;

inline hetnet::Cir cir(std::vector<cplx> taps) { return hetnet::Cir{std::move(taps)}; }

inline std::vector<cplx> random_taps(std::mt19937_64& rng, std::size_t L) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(L);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

/// Raw nested-vector copy of a BS's channels towards one tier: [user][antenna][tap].
inline std::vector<std::vector<std::vector<cplx>>> raw(const hetnet::ChannelSet& set, std::size_t bs,
                                                       std::size_t tier) {
  std::vector<std::vector<std::vector<cplx>>> out(set.users(tier));
  for (std::size_t u = 0; u < set.users(tier); ++u)
    for (std::size_t a = 0; a < set.antennas(bs); ++a) out[u].push_back(set.at(bs, tier, a, u).taps);
  return out;
}

/// One Table I drop for the given seed and index.
inline hetnet::ChannelSet table1_drop(std::uint64_t seed, std::size_t index) {
  const auto config = hetnet::table1_config();
  auto rng = hetnet::drop_rng(seed, index);
  const auto geometry = hetnet::drop_users(config.channel, rng);
  return hetnet::build_channel_set(geometry, config.channel, rng);
}

}  // namespace fixture
