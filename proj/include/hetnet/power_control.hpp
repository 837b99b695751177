#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/link_metrics.hpp"
#include "hetnet/simplex.hpp"
#include "hetnet/time_reversal.hpp"
#include "hetnet/zero_forcing.hpp"

namespace hetnet {

/// 0 dBm == 1 normalized unit == noise power.
double dbm_to_units(double dbm);
double db_to_linear(double db);
double linear_to_db(double linear);

struct PowerControlParams {
  double noise = 1.0;
  double p_tol01 = 0.19952623149688797;  ///< macro -> each FU tolerance (-7 dBm)
  double p_tol10 = 0.19952623149688797;  ///< femto -> each MU tolerance (-7 dBm)
  bool enable_p_tol10_cap = false;       ///< add femto leakage caps to the femto problem
  bool macro_uses_actual_cross = true;   ///< false: macro SINR rows assume P_tol10 cross power
};

enum class AllocationStatus { kOptimal, kInfeasible, kRankDeficient, kSkipped };
std::string to_string(AllocationStatus status);

struct AllocationResult {
  AllocationStatus status = AllocationStatus::kSkipped;
  PowerVector macro_powers;
  PowerVector femto_powers;
  /// Breakdowns as seen by the problem that produced the powers (design-time cross term).
  std::vector<SinrBreakdown> macro_sinr;
  std::vector<SinrBreakdown> femto_sinr;
  double total_power = 0.0;

  bool optimal() const { return status == AllocationStatus::kOptimal; }
};

/// What the femtocell hands to the macrocell over the backhaul: its powers,
/// its beamformers and the FBS->MU channels ([MU][FBS antenna]).
struct BackhaulMessage {
  PowerVector femto_powers;
  std::vector<Beamformer> femto_beamformers;
  std::vector<std::vector<Cir>> fbs_to_mu;
};

struct FemtoAllocation {
  AllocationResult result;
  BackhaulMessage message;
  std::vector<double> leakage_weight;           ///< objective weight per FU
  std::vector<std::vector<double>> leakage;     ///< [MU][FU] leakage gain
};

/// Femto subproblem: minimize total leakage onto the MUs subject to each FU's
/// SINR (sampled at tap L, cross term fixed at P_tol01).
FemtoAllocation femto_power_alloc(const ChannelSet& channels, std::span<const Beamformer> tr_beamformers,
                                  std::span<const double> gamma_f, const PowerControlParams& params);

/// Macro subproblem: minimize total macro power subject to each MU's SINR at
/// its selected tap (with the femto interference implied by `femto`) and the
/// per-(MU, FU) leakage caps P_tol01.
AllocationResult macro_power_alloc(const ChannelSet& channels, const ZfDesign& macro, const BackhaulMessage& femto,
                                   std::span<const double> gamma_m, const PowerControlParams& params);

/// Joint minimum total power over both tiers with the actual cross-tier coupling.
AllocationResult centralized_alloc(const ChannelSet& channels, const ZfDesign& macro,
                                   std::span<const Beamformer> femto_beamformers, std::span<const double> gamma_m,
                                   std::span<const double> gamma_f, const PowerControlParams& params);

struct StandaloneAllocation {
  AllocationResult result;
  std::vector<Beamformer> beamformers;
  std::vector<std::size_t> sampled_tap;
};

/// Femtocell in isolation with either TR (tap L) or Algorithm-1 ZF
/// beamformers; minimum total power, cross term fixed at P_tol01.
StandaloneAllocation femto_standalone_alloc(const ChannelSet& channels, BeamformerKind kind,
                                            std::span<const double> gamma_f, const PowerControlParams& params);

/// Same, with beamformers and sampled taps already designed.
StandaloneAllocation femto_standalone_alloc(const ChannelSet& channels, std::vector<Beamformer> beamformers,
                                            std::vector<std::size_t> sampled_taps, std::span<const double> gamma_f,
                                            const PowerControlParams& params);

/// Actual SINR breakdowns of a two-tier power pair (both cross terms real).
struct ActualSinr {
  std::vector<SinrBreakdown> macro;
  std::vector<SinrBreakdown> femto;
};
ActualSinr actual_sinr(const ChannelSet& channels, const ZfDesign& macro, std::span<const Beamformer> femto_beamformers,
                       const PowerVector& p0, const PowerVector& p1, double noise);

/// True when every breakdown reaches its target within `rel_tol`.
bool meets_targets(std::span<const SinrBreakdown> sinr, std::span<const double> gamma, double rel_tol = 1e-8);

}  // namespace hetnet
