// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hetnet/campaign.hpp"
#include "hetnet/error.hpp"
#include "hetnet/report.hpp"
#include "hetnet/simplex.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// ---- 1: TR focusing identity.
Outcome tr_identity() {
  const auto start = std::chrono::steady_clock::now();
  const auto pdp = tap_mean_powers(itu_indoor_a(), 6, TapMapping::kPerPath);
  Rng rng(1001);
  double worst = 0.0;
  bool real_positive = true;
  for (int k = 0; k < 10000; ++k) {
    const std::vector<Cir> h{generate_cir(pdp, 1.0, rng)};
    const double norm = std::sqrt(h[0].energy());
    const cplx centre = composite_channel(tr_prefilter(h), h).at(6);
    worst = std::max(worst, std::abs(centre - norm) / norm);
    real_positive = real_positive && centre.real() > 0.0 && std::abs(centre.imag()) <= 1e-10 * norm;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-10 && real_positive && secs < 1.0,
          fmt("10000 channels, max rel err %.2e, real-positive %s, %.3f s", worst, real_positive ? "yes" : "no", secs)};
}

// ---- 2: ZF nulling on Table I drops, residuals by literal convolution.
Outcome zf_nulling() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t deficient = 0, checked = 0;
  double worst = 0.0;
  for (std::size_t d = 0; d < 1000; ++d) {
    const auto set = fixture::table1_drop(2024, d);
    std::optional<ZfSolver> solver;
    try {
      solver.emplace(build_zf_system(served_channels(set, kMacro)));
    } catch (const RankDeficient&) {
      ++deficient;
      continue;
    }
    ++checked;
    const auto h = fixture::raw(set, kMacro, kMacro);
    for (std::size_t n = 0; n < 2; ++n) {
      for (std::size_t alpha = 1; alpha <= 11; ++alpha) {
        const auto w = solver->beamformer(n, alpha);
        const auto own = oracle::composite(w.per_antenna, h[n]);
        double residual = 0.0;
        for (std::size_t t = 0; t < own.size(); ++t)
          if (t + 1 != alpha) residual += std::norm(own[t]);
        residual += oracle::energy(oracle::composite(w.per_antenna, h[1 - n]));
        worst = std::max(worst, std::sqrt(residual) / std::abs(own[alpha - 1]));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {checked > 0 && worst <= 1e-9 && secs < 30.0,
          fmt("22x24 systems, %zu drops checked x 22 candidates, max residual/desired %.2e, rank-deficient %zu/1000 "
              "(%.1f%%), %.2f s",
              checked, worst, deficient, 100.0 * static_cast<double>(deficient) / 1000.0, secs)};
}

// ---- 3: LP oracle.
Outcome lp_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(3003);
  const double step = 1e-3;
  std::size_t verdict_mismatch = 0, point_mismatch = 0, feasible = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto lp = oracle::random_lp2(rng, step);
    LpProblem p;
    p.objective = {lp.w1, lp.w2};
    for (const auto& r : lp.rows) p.add({r.a1, r.a2}, r.sense > 0 ? Sense::kGreaterEqual : Sense::kLessEqual, r.b);
    const auto s = solve_lp(p);
    const auto g = oracle::grid_search(lp.w1, lp.w2, lp.rows, step, 2.0);
    if ((s.status == LpStatus::kOptimal) != g.feasible) {
      ++verdict_mismatch;
      continue;
    }
    if (!g.feasible) continue;
    ++feasible;
    const double dev = std::max(std::abs(s.x[0] - g.x1), std::abs(s.x[1] - g.x2));
    worst = std::max(worst, dev);
    if (dev > step) ++point_mismatch;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {verdict_mismatch == 0 && point_mismatch == 0,
          fmt("1000 instances (%zu feasible), verdict mismatches %zu, max |x - x_grid| %.2e (step 1e-3), %.2f s",
              feasible, verdict_mismatch, worst, secs)};
}

// ---- 4 and 5 share one pass over Table I drops.
struct PowerScan {
  std::size_t tight_checked = 0, tight_failures = 0, caps_binding = 0;
  double tight_worst = 0.0;
  std::size_t dominance_checked = 0, dominance_violations = 0, not_joint_feasible = 0;
  double dominance_worst = -INFINITY;
};

PowerScan scan_power() {
  const auto config = table1_config();
  const auto params = config.power_params();
  PowerScan s;
  const auto tight = [&](std::span<const SinrBreakdown> b, std::span<const double> gamma) {
    ++s.tight_checked;
    bool ok = b.size() == gamma.size();
    for (std::size_t j = 0; ok && j < b.size(); ++j) {
      const double err = std::abs(b[j].sinr / gamma[j] - 1.0);
      s.tight_worst = std::max(s.tight_worst, err);
      ok = err <= 1e-8;
    }
    if (!ok) ++s.tight_failures;
  };
  for (double gm_db : {-80.0, -85.0}) {
    const auto gm = config.gamma_m(gm_db), gf = config.gamma_f(-10.0);
    for (std::size_t d = 0; d < 1000; ++d) {
      const auto drop = prepare_drop(config.channel, config.seed, d, params.noise);
      const auto tr = femto_standalone_alloc(drop.channels, BeamformerKind::kTimeReversal, gf, params);
      if (tr.result.optimal()) tight(tr.result.femto_sinr, gf);
      const auto zf = femto_standalone_alloc(drop.channels, BeamformerKind::kZeroForcing, gf, params);
      if (zf.result.optimal()) tight(zf.result.femto_sinr, gf);
      if (!drop.macro) continue;
      const auto dist = run_distributed(drop, gm, gf, params);
      const auto cent = run_centralized(drop, gm, gf, params);
      if (cent.optimal()) {
        tight(cent.macro_sinr, gm);
        tight(cent.femto_sinr, gf);
      }
      if (dist.femto.optimal()) tight(dist.femto.femto_sinr, gf);
      if (dist.macro.optimal()) {
        bool slack = true;
        for (std::size_t j = 0; j < drop.channels.users(kFemto); ++j)
          for (std::size_t n = 0; n < 2; ++n) {
            const double leak = dist.macro.macro_powers[n] *
                                composite_channel(drop.macro->beamformers[n], drop.channels.towards(kMacro, kFemto, j))
                                    .energy();
            slack = slack && leak < params.p_tol01 * (1.0 - 1e-9);
          }
        if (slack) tight(dist.macro.macro_sinr, gm);
        else ++s.caps_binding;
      }
      if (!dist.combined.optimal() || !cent.optimal()) continue;
      // Eq.-11 feasibility of the distributed pair, judged from actual SINRs.
      const auto actual = actual_sinr(drop.channels, *drop.macro, drop.femto_tr, dist.combined.macro_powers,
                                      dist.combined.femto_powers, params.noise);
      if (!meets_targets(actual.macro, gm) || !meets_targets(actual.femto, gf)) {
        ++s.not_joint_feasible;
        continue;
      }
      ++s.dominance_checked;
      const double excess = cent.total_power - dist.combined.total_power;
      s.dominance_worst = std::max(s.dominance_worst, excess);
      if (excess > 1e-9) ++s.dominance_violations;
    }
  }
  return s;
}

// ---- 6: distributed vs centralized gap.
Outcome gap(double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  auto config = table1_config();
  config.drops = 1000;
  config.gamma_f_sweep_db = {-10.0, -10.0, 1.0};
  const auto study = run_gap_study(config);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double g80 = NAN, g85 = NAN, out80 = NAN, out85 = NAN;
  std::size_t pairs80 = 0, pairs85 = 0;
  for (const auto& p : study.points) {
    if (p.gamma_m_db == -80.0) g80 = p.gap_db, out80 = p.outage_rate, pairs80 = p.paired_drops;
    if (p.gamma_m_db == -85.0) g85 = p.gap_db, out85 = p.outage_rate, pairs85 = p.paired_drops;
  }
  const bool ok = g80 > 0.0 && g80 < 2.0 && g85 > 0.0 && g85 < 2.0 && g85 > g80 && seconds < 300.0;
  return {ok, fmt("1000 drops, gamma_F=-10 dB: gap %.3f dB at gamma_M=-80 (%zu paired, outage %.3f), %.3f dB at "
                  "gamma_M=-85 (%zu paired, outage %.3f), %.1f s",
                  g80, pairs80, out80, g85, pairs85, out85, seconds)};
}

// ---- 7: TR vs ZF crossover.
Outcome crossover() {
  const auto start = std::chrono::steady_clock::now();
  auto config = table1_config();
  config.drops = 1000;
  config.gamma_f_sweep_db = {-10.0, 10.0, 1.0};
  config.compare_fu_distance_m = 7.0;
  const auto study = run_compare_study(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int last = 0;
  std::size_t changes = 0;
  double peak = -INFINITY, cross_at = NAN;
  for (const auto& p : study.points) {
    if (std::isnan(p.diff_db) || p.diff_db == 0.0) continue;
    const int s = p.diff_db > 0 ? 1 : -1;
    if (last != 0 && s != last) {
      ++changes;
      cross_at = p.gamma_f_db;
    }
    last = s;
    if (std::isfinite(p.diff_db)) peak = std::max(peak, -p.diff_db);
  }
  const double low = study.points.front().diff_db;
  const bool ok = low < 0.0 && changes == 1 && peak >= 2.0 && peak <= 8.0 && secs < 300.0;
  return {ok, fmt("1000 drops at 7 m, TR-ZF at -10 dB %.3f dB, sign changes %zu (first positive at %.0f dB), peak TR "
                  "advantage %.3f dB, %.1f s",
                  low, changes, cross_at, peak, secs)};
}

// ---- 8: property suite.
Outcome properties() {
  std::vector<std::string> failed;
  const auto check = [&](bool ok, const char* name) {
    if (!ok) failed.push_back(name);
  };

  bool scale_ok = true, linear_ok = true, argmax_ok = true;
  for (std::size_t d = 0; d < 100; ++d) {
    const auto state = prepare_drop(table1_config().channel, 77, d, 1.0);
    if (!state.macro) continue;
    const auto& mb = state.macro->beamformers;
    const PowerVector p0({0.3 + 0.01 * static_cast<double>(d), 1.7}), p1({0.9, 0.05});
    for (double kappa : {1e-3, 10.0, 1e5}) {
      const PowerVector q0({kappa * p0[0], kappa * p0[1]}), q1({kappa * p1[0], kappa * p1[1]});
      for (std::size_t n = 0; n < 2; ++n) {
        const std::size_t a = state.macro->selection.alpha[n];
        const double x = macro_sinr(n, a, p0, mb, state.femto_tr, p1, state.channels, 1.0).sinr;
        const double y = macro_sinr(n, a, q0, mb, state.femto_tr, q1, state.channels, kappa).sinr;
        scale_ok = scale_ok && std::abs(y / x - 1.0) <= 1e-12;
        const double cx = femto_cross_power(n, mb, p0, state.channels);
        const double fx = femto_sinr(n, 6, p1, state.femto_tr, state.channels, cx, 1.0).sinr;
        const double fy = femto_sinr(n, 6, q1, state.femto_tr, state.channels, kappa * cx, kappa).sinr;
        scale_ok = scale_ok && std::abs(fy / fx - 1.0) <= 1e-12;
      }
    }
    const double kappa = 6.5;
    const auto base = femto_sinr(0, 6, p1, state.femto_tr, state.channels, 0.1, 1.0);
    const auto own = femto_sinr(0, 6, PowerVector({kappa * p1[0], p1[1]}), state.femto_tr, state.channels, 0.1, 1.0);
    const auto other = femto_sinr(0, 6, PowerVector({p1[0], kappa * p1[1]}), state.femto_tr, state.channels, 0.1, 1.0);
    const auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(std::abs(a), std::abs(b)); };
    linear_ok = linear_ok && rel(own.p_sig, kappa * base.p_sig) && rel(own.p_isi, kappa * base.p_isi) &&
                own.p_co == base.p_co && rel(other.p_co, kappa * base.p_co) && other.p_sig == base.p_sig;

    for (cplx c : {cplx(1e3), cplx(1e-3), std::polar(0.5, 2.0)}) {
      auto scaled = state.channels;
      scaled.scale(kMacro, kMacro, c);
      argmax_ok = argmax_ok &&
                  select_taps(served_channels(scaled, kMacro), std::norm(c)).selection.alpha ==
                      state.macro->selection.alpha;
    }
  }
  check(scale_ok, "joint-scale-invariance");
  check(linear_ok, "power-linearity");
  check(argmax_ok, "argmax-invariance");

  bool conv_ok = true;
  std::mt19937_64 rng(8008);
  for (int k = 0; k < 1000 && conv_ok; ++k) {
    const std::size_t L = 1 + static_cast<std::size_t>(k % 8);
    const auto g = fixture::random_taps(rng, L), h = fixture::random_taps(rng, L);
    conv_ok = equivalent_channel(g, Cir{h}).taps == oracle::convolve(g, h);
  }
  check(conv_ok, "convolution-oracle");

  auto config = table1_config();
  config.drops = 60;
  config.seed = 99;
  const auto to_csv = [](const Table& t) {
    std::ostringstream out;
    write_csv(t, out);
    return out.str();
  };
  const auto a = run_campaign(config, Execution::kSerial);
  const auto b = run_campaign(config, Execution::kParallel);
  const auto c = run_campaign(config, Execution::kParallel);
  const auto ta = to_csv(allocation_table(a.drops, config)) + to_csv(sinr_table(a.drops, "distributed"));
  const auto tb = to_csv(allocation_table(b.drops, config)) + to_csv(sinr_table(b.drops, "distributed"));
  const auto tc = to_csv(allocation_table(c.drops, config)) + to_csv(sinr_table(c.drops, "distributed"));
  config.drops = 20;
  const auto ga = to_csv(gap_table(run_gap_study(config, Execution::kSerial).points));
  const auto gb = to_csv(gap_table(run_gap_study(config, Execution::kParallel).points));
  check(ta == tb && tb == tc && ga == gb, "bit-exact-reproducibility");

  std::string detail = "scale invariance, power linearity, argmax invariance, convolution oracle, reproducibility";
  if (!failed.empty()) {
    detail = "failed:";
    for (const auto& f : failed) detail += " " + f;
  }
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, "TR focusing identity", tr_identity());
  report(2, "ZF nulling", zf_nulling());
  report(3, "LP solver oracle", lp_oracle());

  const auto start = std::chrono::steady_clock::now();
  const auto scan = scan_power();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(4, "tightness",
         {scan.tight_checked > 0 && scan.tight_failures == 0,
          fmt("%zu optima checked, %zu not tight, max |sinr/gamma - 1| %.2e, %zu macro optima with a binding cap "
              "skipped, %.1f s",
              scan.tight_checked, scan.tight_failures, scan.tight_worst, scan.caps_binding, secs)});
  report(5, "centralized dominance",
         {scan.dominance_checked > 0 && scan.dominance_violations == 0,
          fmt("%zu jointly feasible distributed pairs, %zu violations, max (centralized - distributed) %.3e; %zu "
              "distributed pairs miss an actual SINR target and are excluded",
              scan.dominance_checked, scan.dominance_violations, scan.dominance_worst, scan.not_joint_feasible)});

  double gap_secs = 0.0;
  report(6, "distributed vs centralized gap", gap(gap_secs));
  report(7, "TR vs ZF crossover", crossover());
  report(8, "property suite", properties());

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
