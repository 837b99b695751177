#include "hetnet/campaign.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

// Runs body(i) for every drop. Each iteration writes only its own slot, so the
// parallel driver needs no synchronization beyond the final join.
template <class Body>
void for_each_drop(std::size_t count, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (execution == Execution::kSerial) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i) guarded(static_cast<std::size_t>(i));
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

AllocationResult with_status(AllocationStatus status) {
  AllocationResult r;
  r.status = status;
  return r;
}

}  // namespace

double mean_db(const std::vector<double>& linear) {
  if (linear.empty()) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double v : linear) s += v;
  return linear_to_db(s / static_cast<double>(linear.size()));
}

DropState prepare_drop(const ChannelConfig& channel, std::uint64_t seed, std::size_t drop_index, double noise,
                       bool with_macro) {
  DropState d;
  d.index = drop_index;
  auto rng = drop_rng(seed, drop_index);
  d.geometry = drop_users(channel, rng);
  d.channels = build_channel_set(d.geometry, channel, rng);
  d.femto_tr = femto_tr_beamformers(d.channels);
  if (with_macro) {
    try {
      d.macro = select_taps(served_channels(d.channels, kMacro), noise);
    } catch (const RankDeficient&) {
      d.macro.reset();
    }
  }
  return d;
}

DistributedOutcome run_distributed(const DropState& drop, const std::vector<double>& gamma_m,
                                   const std::vector<double>& gamma_f, const PowerControlParams& params) {
  DistributedOutcome out;
  if (!drop.macro) {
    out.femto = out.macro = out.combined = with_status(AllocationStatus::kRankDeficient);
    return out;
  }
  const auto& ch = drop.channels;
  BackhaulMessage message;
  if (ch.users(kFemto) > 0) {
    auto femto = femto_power_alloc(ch, drop.femto_tr, gamma_f, params);
    out.femto = femto.result;
    if (!out.femto.optimal()) {
      out.macro = with_status(AllocationStatus::kSkipped);
      out.combined = with_status(AllocationStatus::kInfeasible);
      return out;
    }
    message = std::move(femto.message);
  } else {
    out.femto = with_status(AllocationStatus::kSkipped);
  }

  out.macro = macro_power_alloc(ch, *drop.macro, message, gamma_m, params);
  if (!out.macro.optimal()) {
    out.combined = with_status(AllocationStatus::kInfeasible);
    return out;
  }
  auto& c = out.combined;
  c.status = AllocationStatus::kOptimal;
  c.macro_powers = out.macro.macro_powers;
  c.femto_powers = message.femto_powers;
  c.total_power = c.macro_powers.total() + c.femto_powers.total();
  const auto actual = actual_sinr(ch, *drop.macro, drop.femto_tr, c.macro_powers, c.femto_powers, params.noise);
  c.macro_sinr = actual.macro;
  c.femto_sinr = actual.femto;
  out.meets_joint_targets = meets_targets(c.macro_sinr, gamma_m) && meets_targets(c.femto_sinr, gamma_f);
  return out;
}

AllocationResult run_centralized(const DropState& drop, const std::vector<double>& gamma_m,
                                 const std::vector<double>& gamma_f, const PowerControlParams& params) {
  if (!drop.macro) return with_status(AllocationStatus::kRankDeficient);
  return centralized_alloc(drop.channels, *drop.macro, drop.femto_tr, gamma_m, gamma_f, params);
}

DropResult run_drop(const ScenarioConfig& config, std::size_t drop_index) {
  DropResult r;
  r.index = drop_index;
  try {
    const auto params = config.power_params();
    const auto drop = prepare_drop(config.channel, config.seed, drop_index, config.noise_power);
    r.geometry = drop.geometry;
    for (std::size_t j = 0; j < drop.channels.users(kFemto); ++j)
      r.focusing.push_back(focusing_report(drop.channels, drop.femto_tr, j));
    if (drop.macro) r.selection = drop.macro->selection;

    const auto gm = config.gamma_m(config.gamma_m_db);
    const auto gf = config.gamma_f(config.gamma_f_db);
    const auto dist = run_distributed(drop, gm, gf, params);
    r.distributed = dist.combined;
    r.distributed_meets_joint_targets = dist.meets_joint_targets;
    r.fbs_cap_violated = r.distributed.optimal() && r.distributed.femto_powers.total() > dbm_to_units(config.fbs_power_cap_dbm);
    r.centralized = run_centralized(drop, gm, gf, params);

    if (drop.channels.users(kFemto) > 0) {
      r.tr_standalone = femto_standalone_alloc(drop.channels, BeamformerKind::kTimeReversal, gf, params).result;
      r.zf_standalone = femto_standalone_alloc(drop.channels, BeamformerKind::kZeroForcing, gf, params).result;
    } else {
      r.tr_standalone = with_status(AllocationStatus::kSkipped);
      r.zf_standalone = with_status(AllocationStatus::kSkipped);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<SchemeSummary> summarize(const std::vector<DropResult>& drops) {
  const auto pick = [](const DropResult& d, int s) -> const AllocationResult& {
    switch (s) {
      case 0: return d.distributed;
      case 1: return d.centralized;
      case 2: return d.tr_standalone;
      default: return d.zf_standalone;
    }
  };
  const char* names[] = {"distributed", "centralized", "tr_standalone", "zf_standalone"};
  std::vector<SchemeSummary> out;
  for (int s = 0; s < 4; ++s) {
    SchemeSummary sum;
    sum.scheme = names[s];
    std::vector<double> powers;
    std::size_t attempted = 0;
    for (const auto& d : drops) {
      const auto& a = pick(d, s);
      if (a.status == AllocationStatus::kSkipped) continue;
      ++attempted;
      if (a.optimal()) powers.push_back(a.total_power);
    }
    sum.feasible = powers.size();
    sum.mean_power_db = mean_db(powers);
    sum.mean_power = powers.empty() ? 0.0 : std::pow(10.0, sum.mean_power_db / 10.0);
    sum.outage_rate = attempted ? 1.0 - static_cast<double>(powers.size()) / static_cast<double>(attempted) : 0.0;
    out.push_back(sum);
  }
  return out;
}

CampaignResult run_campaign(const ScenarioConfig& config, Execution execution) {
  config.validate();
  CampaignResult res;
  res.config = config;
  res.drops.resize(config.drops);
  for_each_drop(config.drops, execution, [&](std::size_t i) { res.drops[i] = run_drop(config, i); });

  res.summary = summarize(res.drops);
  std::vector<double> dist, cent;
  for (const auto& d : res.drops) {
    if (!d.selection) ++res.rank_deficient_drops;
    if (d.distributed.optimal() && !d.distributed_meets_joint_targets) ++res.joint_target_violations;
    if (d.fbs_cap_violated) ++res.fbs_cap_violations;
    if (d.distributed.optimal() && d.centralized.optimal()) {
      dist.push_back(d.distributed.total_power);
      cent.push_back(d.centralized.total_power);
    }
  }
  res.mean_gap_db = dist.empty() ? std::numeric_limits<double>::quiet_NaN() : mean_db(dist) - mean_db(cent);
  return res;
}

GapStudy run_gap_study(const ScenarioConfig& config, Execution execution) {
  config.validate();
  const auto params = config.power_params();
  const auto gamma_f_values = config.gamma_f_sweep_db.values();
  struct Cell {
    AllocationResult dist;
    AllocationResult cent;
    bool meets = false;
  };
  const std::size_t cells = config.gap_gamma_m_db.size() * gamma_f_values.size();
  std::vector<std::vector<Cell>> per_drop(config.drops);

  for_each_drop(config.drops, execution, [&](std::size_t i) {
    const auto drop = prepare_drop(config.channel, config.seed, i, config.noise_power);
    auto& out = per_drop[i];
    out.reserve(cells);
    for (double gm_db : config.gap_gamma_m_db) {
      for (double gf_db : gamma_f_values) {
        const auto gm = config.gamma_m(gm_db);
        const auto gf = config.gamma_f(gf_db);
        const auto dist = run_distributed(drop, gm, gf, params);
        out.push_back({dist.combined, run_centralized(drop, gm, gf, params), dist.meets_joint_targets});
      }
    }
  });

  GapStudy study;
  std::size_t cell = 0;
  for (double gm_db : config.gap_gamma_m_db) {
    for (double gf_db : gamma_f_values) {
      GapPoint pt;
      pt.gamma_f_db = gf_db;
      pt.gamma_m_db = gm_db;
      std::vector<double> dist, cent;
      std::size_t outages = 0;
      for (std::size_t i = 0; i < config.drops; ++i) {
        const auto& c = per_drop[i][cell];
        if (!c.dist.optimal()) ++outages;
        if (c.dist.optimal() && !c.meets) ++pt.joint_target_violations;
        if (c.dist.optimal() && c.cent.optimal()) {
          dist.push_back(c.dist.total_power);
          cent.push_back(c.cent.total_power);
          if (c.meets && c.cent.total_power > c.dist.total_power + 1e-9) ++pt.dominance_violations;
        }
      }
      pt.paired_drops = dist.size();
      pt.mean_distributed_db = mean_db(dist);
      pt.mean_centralized_db = mean_db(cent);
      pt.gap_db = dist.empty() ? std::numeric_limits<double>::quiet_NaN() : pt.mean_distributed_db - pt.mean_centralized_db;
      pt.outage_rate = static_cast<double>(outages) / static_cast<double>(config.drops);
      study.points.push_back(pt);
      ++cell;
    }
  }
  for (std::size_t i = 0; i < config.drops; ++i) {
    std::size_t k = 0;
    for (double gm_db : config.gap_gamma_m_db) {
      for (double gf_db : gamma_f_values) {
        const auto& c = per_drop[i][k++];
        study.rows.push_back({i, "distributed", gf_db, gm_db, c.dist});
        study.rows.push_back({i, "centralized", gf_db, gm_db, c.cent});
      }
    }
  }
  return study;
}

CompareStudy run_compare_study(const ScenarioConfig& config, Execution execution) {
  config.validate();
  const auto params = config.power_params();
  const auto gamma_f_values = config.gamma_f_sweep_db.values();
  ChannelConfig channel = config.channel;
  channel.fu_fixed_distance_m = config.compare_fu_distance_m;

  struct Cell {
    AllocationResult tr;
    AllocationResult zf;
  };
  std::vector<std::vector<Cell>> per_drop(config.drops);
  for_each_drop(config.drops, execution, [&](std::size_t i) {
    const auto drop = prepare_drop(channel, config.seed, i, config.noise_power, false);
    const auto& ch = drop.channels;
    std::optional<ZfDesign> zf;
    try {
      zf = select_taps(served_channels(ch, kFemto), params.noise);
    } catch (const RankDeficient&) {
    }
    const std::vector<std::size_t> centre(ch.users(kFemto), ch.taps());
    auto& out = per_drop[i];
    for (double gf_db : gamma_f_values) {
      const auto gf = config.gamma_f(gf_db);
      Cell c;
      c.tr = femto_standalone_alloc(ch, drop.femto_tr, centre, gf, params).result;
      c.zf = zf ? femto_standalone_alloc(ch, zf->beamformers, zf->selection.alpha, gf, params).result
                : with_status(AllocationStatus::kRankDeficient);
      out.push_back(std::move(c));
    }
  });

  CompareStudy study;
  for (std::size_t k = 0; k < gamma_f_values.size(); ++k) {
    ComparePoint pt;
    pt.gamma_f_db = gamma_f_values[k];
    std::vector<double> tr, zf;
    std::size_t tr_ok = 0, zf_ok = 0;
    for (std::size_t i = 0; i < config.drops; ++i) {
      const auto& c = per_drop[i][k];
      tr_ok += c.tr.optimal();
      zf_ok += c.zf.optimal();
      if (c.tr.optimal() && c.zf.optimal()) {
        tr.push_back(c.tr.total_power);
        zf.push_back(c.zf.total_power);
      }
    }
    const double drops = static_cast<double>(config.drops);
    pt.tr_outage_rate = 1.0 - static_cast<double>(tr_ok) / drops;
    pt.zf_outage_rate = 1.0 - static_cast<double>(zf_ok) / drops;
    pt.paired_drops = tr.size();
    pt.mean_tr_db = mean_db(tr);
    pt.mean_zf_db = mean_db(zf);
    if (!tr.empty()) pt.diff_db = pt.mean_tr_db - pt.mean_zf_db;
    else if (tr_ok == 0 && zf_ok > 0) pt.diff_db = std::numeric_limits<double>::infinity();
    else if (zf_ok == 0 && tr_ok > 0) pt.diff_db = -std::numeric_limits<double>::infinity();
    else pt.diff_db = std::numeric_limits<double>::quiet_NaN();
    study.points.push_back(pt);
  }

  int last_sign = 0;
  study.peak_tr_advantage_db = -std::numeric_limits<double>::infinity();
  for (const auto& pt : study.points) {
    if (std::isnan(pt.diff_db) || pt.diff_db == 0.0) continue;
    const int sign = pt.diff_db > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++study.sign_changes;
    last_sign = sign;
    if (std::isfinite(pt.diff_db)) study.peak_tr_advantage_db = std::max(study.peak_tr_advantage_db, -pt.diff_db);
  }

  for (std::size_t i = 0; i < config.drops; ++i) {
    for (std::size_t k = 0; k < gamma_f_values.size(); ++k) {
      study.rows.push_back({i, "tr_standalone", gamma_f_values[k], config.gamma_m_db, per_drop[i][k].tr});
      study.rows.push_back({i, "zf_standalone", gamma_f_values[k], config.gamma_m_db, per_drop[i][k].zf});
    }
  }
  return study;
}

FocusingStudy run_focusing_study(const ScenarioConfig& config, Execution execution) {
  config.validate();
  std::vector<FocusingStudy> per_drop(config.drops);
  for_each_drop(config.drops, execution, [&](std::size_t i) {
    const auto drop = prepare_drop(config.channel, config.seed, i, config.noise_power, false);
    const auto& ch = drop.channels;
    auto& out = per_drop[i];
    for (std::size_t j = 0; j < ch.users(kFemto); ++j) {
      const auto links = ch.towards(kFemto, kFemto, j);
      out.reports.push_back({i, j, focusing_report(ch, drop.femto_tr, j)});
      for (std::size_t a = 0; a < links.size(); ++a)
        for (std::size_t t = 0; t < links[a].size(); ++t) out.taps.push_back({i, "cir", j, j, a, t + 1, links[a].taps[t]});
    }
    for (std::size_t j = 0; j < ch.users(kFemto); ++j) {
      for (std::size_t obs = 0; obs < ch.users(kFemto); ++obs) {
        const auto eq = composite_channel(drop.femto_tr[j], ch.towards(kFemto, kFemto, obs));
        const char* kind = obs == j ? "intended" : "unintended";
        for (std::size_t t = 1; t <= eq.size(); ++t) out.taps.push_back({i, kind, j, obs, 0, t, eq.at(t)});
      }
    }
  });
  FocusingStudy study;
  for (auto& d : per_drop) {
    study.reports.insert(study.reports.end(), d.reports.begin(), d.reports.end());
    study.taps.insert(study.taps.end(), d.taps.begin(), d.taps.end());
  }
  return study;
}

}  // namespace hetnet
