#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/power_control.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/time_reversal.hpp"
#include "hetnet/zero_forcing.hpp"

namespace hetnet {

/// kSerial is the reference driver; kParallel fans drops out with OpenMP.
/// Both produce identical results because every drop owns its RNG stream.
enum class Execution { kSerial, kParallel };

/// Target-independent part of a drop: placement, channels and beamformers.
struct DropState {
  std::size_t index = 0;
  Geometry geometry;
  ChannelSet channels;
  std::vector<Beamformer> femto_tr;
  std::optional<ZfDesign> macro;  ///< empty when the macro ZF system is rank-deficient
};

DropState prepare_drop(const ChannelConfig& channel, std::uint64_t seed, std::size_t drop_index, double noise,
                       bool with_macro = true);

struct DistributedOutcome {
  AllocationResult femto;      ///< femto subproblem
  AllocationResult macro;      ///< macro subproblem
  AllocationResult combined;   ///< both tiers, SINRs evaluated with actual cross-tier terms
  bool meets_joint_targets = false;  ///< combined pair satisfies every actual SINR target
};

DistributedOutcome run_distributed(const DropState& drop, const std::vector<double>& gamma_m,
                                   const std::vector<double>& gamma_f, const PowerControlParams& params);
AllocationResult run_centralized(const DropState& drop, const std::vector<double>& gamma_m,
                                 const std::vector<double>& gamma_f, const PowerControlParams& params);

struct DropResult {
  std::size_t index = 0;
  Geometry geometry;
  std::vector<FocusingReport> focusing;     ///< per FU, own TR beamformer
  std::optional<TapSelection> selection;    ///< macro Algorithm-1 result
  AllocationResult distributed;
  AllocationResult centralized;
  AllocationResult tr_standalone;
  AllocationResult zf_standalone;
  bool distributed_meets_joint_targets = false;
  bool fbs_cap_violated = false;
  std::string error;                        ///< non-empty when the drop could not be processed
};

/// geometry -> channels -> TR -> Algorithm 1 -> femto LP -> macro LP ->
/// centralized LP -> standalone femto comparisons, at the config's targets.
DropResult run_drop(const ScenarioConfig& config, std::size_t drop_index);

struct SchemeSummary {
  std::string scheme;
  std::size_t feasible = 0;
  double mean_power = 0.0;      ///< mean of linear total power over feasible drops
  double mean_power_db = 0.0;
  double outage_rate = 0.0;
};

struct CampaignResult {
  ScenarioConfig config;
  std::vector<DropResult> drops;
  std::vector<SchemeSummary> summary;     ///< distributed, centralized, tr_standalone, zf_standalone
  double mean_gap_db = 0.0;               ///< over drops where both distributed and centralized are feasible
  std::size_t rank_deficient_drops = 0;
  std::size_t joint_target_violations = 0;
  std::size_t fbs_cap_violations = 0;
};

CampaignResult run_campaign(const ScenarioConfig& config, Execution execution = Execution::kParallel);
std::vector<SchemeSummary> summarize(const std::vector<DropResult>& drops);

/// Linear mean, in dB. -inf for an empty input.
double mean_db(const std::vector<double>& linear);

// ---- Fig. 5: distributed vs centralized over a gamma_F sweep for each gamma_M.

struct GapPoint {
  double gamma_f_db = 0.0;
  double gamma_m_db = 0.0;
  double mean_distributed_db = 0.0;
  double mean_centralized_db = 0.0;
  double gap_db = 0.0;
  double outage_rate = 0.0;            ///< distributed infeasible or drop not zero-forceable
  std::size_t paired_drops = 0;        ///< both schemes feasible
  std::size_t dominance_violations = 0;   ///< centralized > distributed + 1e-9 on a jointly feasible drop
  std::size_t joint_target_violations = 0;  ///< distributed pair misses an actual SINR target
};

struct AllocationRow {
  std::size_t drop_id = 0;
  std::string scheme;
  double gamma_f_db = 0.0;
  double gamma_m_db = 0.0;
  AllocationResult result;
};

struct GapStudy {
  std::vector<GapPoint> points;
  std::vector<AllocationRow> rows;
};

GapStudy run_gap_study(const ScenarioConfig& config, Execution execution = Execution::kParallel);

// ---- Fig. 6: TR vs ZF femtocell with FUs at a fixed distance.

struct ComparePoint {
  double gamma_f_db = 0.0;
  double mean_tr_db = 0.0;       ///< over drops where both are feasible
  double mean_zf_db = 0.0;
  double diff_db = 0.0;          ///< TR - ZF; +inf if TR is infeasible on every drop
  double tr_outage_rate = 0.0;
  double zf_outage_rate = 0.0;
  std::size_t paired_drops = 0;
};

struct CompareStudy {
  std::vector<ComparePoint> points;
  std::vector<AllocationRow> rows;
  std::size_t sign_changes = 0;
  double peak_tr_advantage_db = 0.0;  ///< max over points of (ZF - TR)
};

CompareStudy run_compare_study(const ScenarioConfig& config, Execution execution = Execution::kParallel);

// ---- Figs. 1-3: focusing.

struct FocusingRow {
  std::size_t drop_id = 0;
  std::size_t user = 0;
  FocusingReport report;
};

struct TapRow {
  std::size_t drop_id = 0;
  std::string kind;             ///< "cir", "intended", "unintended"
  std::size_t beamformer_user = 0;
  std::size_t observer_user = 0;
  std::size_t antenna = 0;      ///< only meaningful for "cir"
  std::size_t tap = 0;          ///< 1-based
  cplx value;
};

struct FocusingStudy {
  std::vector<FocusingRow> reports;
  std::vector<TapRow> taps;
};

FocusingStudy run_focusing_study(const ScenarioConfig& config, Execution execution = Execution::kParallel);

}  // namespace hetnet
