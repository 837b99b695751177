#include "hetnet/power_control.hpp"

#include <cmath>
#include <stdexcept>

#include "hetnet/error.hpp"

namespace hetnet {

double dbm_to_units(double dbm) { return std::pow(10.0, dbm / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string to_string(AllocationStatus status) {
  switch (status) {
    case AllocationStatus::kOptimal: return "optimal";
    case AllocationStatus::kInfeasible: return "infeasible";
    case AllocationStatus::kRankDeficient: return "rank_deficient";
    case AllocationStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

namespace {

void check_targets(std::span<const double> gamma, std::size_t users, const char* what) {
  if (gamma.size() != users) throw InvalidInput(std::string(what) + ": one SINR target per user");
  for (double g : gamma)
    if (!(g > 0.0) || !std::isfinite(g)) throw InvalidInput(std::string(what) + ": SINR targets must be positive");
}

// One row per user of the tier whose variables start at `offset`:
//   (sig - g isi) p_j - g sum co p_j' - g sum cross p_other >= g (noise + fixed_cross_j)
// `coupled_offset` < 0 means the cross term is a constant (fixed_cross).
void add_sinr_rows(LpProblem& lp, const TierGains& gains, std::span<const double> gamma, std::size_t offset,
                   std::span<const double> fixed_cross, long coupled_offset, double noise) {
  const std::size_t width = lp.variables();
  for (std::size_t j = 0; j < gains.users(); ++j) {
    std::vector<double> row(width, 0.0);
    const double g = gamma[j];
    row[offset + j] = gains.signal[j] - g * gains.isi[j];
    for (std::size_t u = 0; u < gains.users(); ++u)
      if (u != j) row[offset + u] -= g * gains.co[j][u];
    if (coupled_offset >= 0) {
      for (std::size_t u = 0; u < gains.cross[j].size(); ++u)
        row[static_cast<std::size_t>(coupled_offset) + u] -= g * gains.cross[j][u];
    }
    const double cross = fixed_cross.empty() ? 0.0 : fixed_cross[j];
    lp.add(std::move(row), Sense::kGreaterEqual, g * (noise + cross));
  }
}

LpSolution solve_checked(const LpProblem& lp) {
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::kUnbounded) throw std::logic_error("power LP reported unbounded");
  return sol;
}

std::vector<double> slice(const std::vector<double>& x, std::size_t begin, std::size_t count) {
  return {x.begin() + static_cast<long>(begin), x.begin() + static_cast<long>(begin + count)};
}

std::vector<std::size_t> centre_taps(const ChannelSet& channels) {
  return std::vector<std::size_t>(channels.users(kFemto), channels.taps());
}

}  // namespace

FemtoAllocation femto_power_alloc(const ChannelSet& channels, std::span<const Beamformer> tr_beamformers,
                                  std::span<const double> gamma_f, const PowerControlParams& params) {
  const std::size_t n1 = channels.users(kFemto);
  const std::size_t n0 = channels.users(kMacro);
  check_targets(gamma_f, n1, "femto allocation");
  const auto taps = centre_taps(channels);
  const auto gains = tier_gains(channels, kFemto, tr_beamformers, taps, {});

  FemtoAllocation out;
  out.message.femto_beamformers.assign(tr_beamformers.begin(), tr_beamformers.end());
  for (std::size_t n = 0; n < n0; ++n) out.message.fbs_to_mu.push_back(channels.towards(kFemto, kMacro, n));
  out.leakage.assign(n0, std::vector<double>(n1, 0.0));
  out.leakage_weight.assign(n1, 0.0);
  for (std::size_t n = 0; n < n0; ++n) {
    for (std::size_t j = 0; j < n1; ++j) {
      out.leakage[n][j] = composite_channel(tr_beamformers[j], out.message.fbs_to_mu[n]).energy();
      out.leakage_weight[j] += out.leakage[n][j];
    }
  }

  LpProblem lp;
  lp.objective = out.leakage_weight;
  const std::vector<double> tolerance(n1, params.p_tol01);
  add_sinr_rows(lp, gains, gamma_f, 0, tolerance, -1, params.noise);
  if (params.enable_p_tol10_cap) {
    for (std::size_t n = 0; n < n0; ++n) {
      for (std::size_t j = 0; j < n1; ++j) {
        std::vector<double> row(n1, 0.0);
        row[j] = out.leakage[n][j];
        lp.add(std::move(row), Sense::kLessEqual, params.p_tol10);
      }
    }
  }

  const auto sol = solve_checked(lp);
  auto& r = out.result;
  if (sol.status != LpStatus::kOptimal) {
    r.status = AllocationStatus::kInfeasible;
    return out;
  }
  r.status = AllocationStatus::kOptimal;
  r.femto_powers = PowerVector(sol.x);
  r.total_power = r.femto_powers.total();
  for (std::size_t j = 0; j < n1; ++j)
    r.femto_sinr.push_back(femto_sinr(j, taps[j], r.femto_powers, tr_beamformers, channels, params.p_tol01, params.noise));
  out.message.femto_powers = r.femto_powers;
  return out;
}

AllocationResult macro_power_alloc(const ChannelSet& channels, const ZfDesign& macro, const BackhaulMessage& femto,
                                   std::span<const double> gamma_m, const PowerControlParams& params) {
  const std::size_t n0 = channels.users(kMacro);
  const std::size_t n1 = femto.femto_beamformers.size();
  check_targets(gamma_m, n0, "macro allocation");
  if (femto.femto_powers.size() != n1 || (n1 > 0 && femto.fbs_to_mu.size() != n0))
    throw InvalidInput("incomplete backhaul message");

  auto gains = tier_gains(channels, kMacro, macro.beamformers, macro.selection.alpha, {});
  gains.cross.assign(n0, std::vector<double>(n1, 0.0));
  for (std::size_t n = 0; n < n0; ++n)
    for (std::size_t j = 0; j < n1; ++j)
      gains.cross[n][j] = composite_channel(femto.femto_beamformers[j], femto.fbs_to_mu[n]).energy();

  std::vector<double> fixed_cross(n0, 0.0);
  for (std::size_t n = 0; n < n0; ++n) {
    fixed_cross[n] = params.macro_uses_actual_cross ? cross_power(gains, n, femto.femto_powers)
                                                    : (n1 > 0 ? params.p_tol10 : 0.0);
  }

  LpProblem lp;
  lp.objective.assign(n0, 1.0);
  add_sinr_rows(lp, gains, gamma_m, 0, fixed_cross, -1, params.noise);
  for (std::size_t j = 0; j < channels.users(kFemto); ++j) {
    const auto mbs_to_j = channels.towards(kMacro, kFemto, j);
    for (std::size_t n = 0; n < n0; ++n) {
      std::vector<double> row(n0, 0.0);
      row[n] = composite_channel(macro.beamformers[n], mbs_to_j).energy();
      lp.add(std::move(row), Sense::kLessEqual, params.p_tol01);
    }
  }

  AllocationResult r;
  const auto sol = solve_checked(lp);
  if (sol.status != LpStatus::kOptimal) {
    r.status = AllocationStatus::kInfeasible;
    return r;
  }
  r.status = AllocationStatus::kOptimal;
  r.macro_powers = PowerVector(sol.x);
  r.femto_powers = femto.femto_powers;
  r.total_power = r.macro_powers.total();
  for (std::size_t n = 0; n < n0; ++n) {
    auto b = macro_sinr(n, macro.selection.alpha[n], r.macro_powers, macro.beamformers, femto.femto_beamformers,
                        femto.femto_powers, channels, params.noise);
    if (!params.macro_uses_actual_cross) b = make_breakdown(b.p_sig, b.p_isi, b.p_co, fixed_cross[n], b.noise);
    r.macro_sinr.push_back(b);
  }
  return r;
}

AllocationResult centralized_alloc(const ChannelSet& channels, const ZfDesign& macro,
                                   std::span<const Beamformer> femto_beamformers, std::span<const double> gamma_m,
                                   std::span<const double> gamma_f, const PowerControlParams& params) {
  const std::size_t n0 = channels.users(kMacro);
  const std::size_t n1 = channels.users(kFemto);
  check_targets(gamma_m, n0, "centralized allocation");
  check_targets(gamma_f, n1, "centralized allocation");

  const auto macro_gains = tier_gains(channels, kMacro, macro.beamformers, macro.selection.alpha, femto_beamformers);
  const auto femto_gains = tier_gains(channels, kFemto, femto_beamformers, centre_taps(channels), macro.beamformers);

  // Variables: [p0 (n0) | p1 (n1)].
  LpProblem lp;
  lp.objective.assign(n0 + n1, 1.0);
  add_sinr_rows(lp, macro_gains, gamma_m, 0, {}, static_cast<long>(n0), params.noise);
  add_sinr_rows(lp, femto_gains, gamma_f, n0, {}, 0, params.noise);

  AllocationResult r;
  const auto sol = solve_checked(lp);
  if (sol.status != LpStatus::kOptimal) {
    r.status = AllocationStatus::kInfeasible;
    return r;
  }
  r.status = AllocationStatus::kOptimal;
  r.macro_powers = PowerVector(slice(sol.x, 0, n0));
  r.femto_powers = PowerVector(slice(sol.x, n0, n1));
  r.total_power = r.macro_powers.total() + r.femto_powers.total();
  const auto actual = actual_sinr(channels, macro, femto_beamformers, r.macro_powers, r.femto_powers, params.noise);
  r.macro_sinr = actual.macro;
  r.femto_sinr = actual.femto;
  return r;
}

StandaloneAllocation femto_standalone_alloc(const ChannelSet& channels, BeamformerKind kind,
                                            std::span<const double> gamma_f, const PowerControlParams& params) {
  if (kind == BeamformerKind::kTimeReversal)
    return femto_standalone_alloc(channels, femto_tr_beamformers(channels), centre_taps(channels), gamma_f, params);
  ZfDesign design;
  try {
    design = select_taps(served_channels(channels, kFemto), params.noise);
  } catch (const RankDeficient&) {
    StandaloneAllocation out;
    out.result.status = AllocationStatus::kRankDeficient;
    return out;
  }
  return femto_standalone_alloc(channels, std::move(design.beamformers), std::move(design.selection.alpha), gamma_f,
                                params);
}

StandaloneAllocation femto_standalone_alloc(const ChannelSet& channels, std::vector<Beamformer> beamformers,
                                            std::vector<std::size_t> sampled_taps, std::span<const double> gamma_f,
                                            const PowerControlParams& params) {
  const std::size_t n1 = channels.users(kFemto);
  check_targets(gamma_f, n1, "standalone femto allocation");

  StandaloneAllocation out;
  out.beamformers = std::move(beamformers);
  out.sampled_tap = std::move(sampled_taps);
  const auto gains = tier_gains(channels, kFemto, out.beamformers, out.sampled_tap, {});
  LpProblem lp;
  lp.objective.assign(n1, 1.0);
  const std::vector<double> tolerance(n1, params.p_tol01);
  add_sinr_rows(lp, gains, gamma_f, 0, tolerance, -1, params.noise);

  const auto sol = solve_checked(lp);
  auto& r = out.result;
  if (sol.status != LpStatus::kOptimal) {
    r.status = AllocationStatus::kInfeasible;
    return out;
  }
  r.status = AllocationStatus::kOptimal;
  r.femto_powers = PowerVector(sol.x);
  r.total_power = r.femto_powers.total();
  for (std::size_t j = 0; j < n1; ++j) {
    r.femto_sinr.push_back(
        femto_sinr(j, out.sampled_tap[j], r.femto_powers, out.beamformers, channels, params.p_tol01, params.noise));
  }
  return out;
}

ActualSinr actual_sinr(const ChannelSet& channels, const ZfDesign& macro, std::span<const Beamformer> femto_beamformers,
                       const PowerVector& p0, const PowerVector& p1, double noise) {
  ActualSinr out;
  for (std::size_t n = 0; n < channels.users(kMacro); ++n)
    out.macro.push_back(
        macro_sinr(n, macro.selection.alpha[n], p0, macro.beamformers, femto_beamformers, p1, channels, noise));
  for (std::size_t j = 0; j < channels.users(kFemto); ++j) {
    const double cross = femto_cross_power(j, macro.beamformers, p0, channels);
    out.femto.push_back(femto_sinr(j, channels.taps(), p1, femto_beamformers, channels, cross, noise));
  }
  return out;
}

bool meets_targets(std::span<const SinrBreakdown> sinr, std::span<const double> gamma, double rel_tol) {
  if (sinr.size() != gamma.size()) return false;
  for (std::size_t j = 0; j < sinr.size(); ++j)
    if (sinr[j].sinr < gamma[j] * (1.0 - rel_tol)) return false;
  return true;
}

}  // namespace hetnet
