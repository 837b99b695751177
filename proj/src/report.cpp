#include "hetnet/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hetnet/error.hpp"

namespace hetnet {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json();
  return std::get<std::string>(c);
}

std::int64_t id(std::size_t v) { return static_cast<std::int64_t>(v); }

double power_db(const AllocationResult& r) {
  return r.optimal() ? linear_to_db(r.total_power) : std::numeric_limits<double>::quiet_NaN();
}

void append_powers(std::vector<Cell>& row, const PowerVector& p, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) row.emplace_back(k < p.size() ? p[k] : std::numeric_limits<double>::quiet_NaN());
}

std::vector<std::string> allocation_columns(std::size_t n0, std::size_t n1) {
  std::vector<std::string> cols{"drop_id", "scheme", "total_power_db", "status"};
  for (std::size_t n = 0; n < n0; ++n) cols.push_back("p_macro_" + std::to_string(n + 1));
  for (std::size_t j = 0; j < n1; ++j) cols.push_back("p_femto_" + std::to_string(j + 1));
  return cols;
}

std::vector<Cell> allocation_row(std::size_t drop, const std::string& scheme, const AllocationResult& r,
                                 std::size_t n0, std::size_t n1) {
  std::vector<Cell> row{id(drop), scheme, power_db(r), to_string(r.status)};
  append_powers(row, r.macro_powers, n0);
  append_powers(row, r.femto_powers, n1);
  return row;
}

nlohmann::json breakdown_json(const SinrBreakdown& b) {
  return {{"p_sig", b.p_sig}, {"p_isi", b.p_isi}, {"p_co", b.p_co}, {"p_cross", b.p_cross},
          {"noise", b.noise}, {"sinr_db", std::isfinite(b.sinr_db()) ? nlohmann::json(b.sinr_db()) : nlohmann::json()}};
}

nlohmann::json allocation_json(const AllocationResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["total_power_db"] = r.optimal() ? nlohmann::json(linear_to_db(r.total_power)) : nlohmann::json();
  j["macro_powers"] = r.macro_powers.p;
  j["femto_powers"] = r.femto_powers.p;
  j["macro_sinr"] = nlohmann::json::array();
  for (const auto& b : r.macro_sinr) j["macro_sinr"].push_back(breakdown_json(b));
  j["femto_sinr"] = nlohmann::json::array();
  for (const auto& b : r.femto_sinr) j["femto_sinr"].push_back(breakdown_json(b));
  return j;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
}

nlohmann::json to_json(const Table& table) {
  auto arr = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, const std::string& stem,
                                  OutputFormat format) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (stem + (format == OutputFormat::kCsv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == OutputFormat::kCsv) write_csv(table, out);
  else out << to_json(table).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

Table focusing_table(const std::vector<FocusingRow>& rows) {
  Table t{{"drop_id", "user", "peak_power", "isi_power", "ratio"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({id(r.drop_id), id(r.user + 1), r.report.peak_power, r.report.isi_power, r.report.peak_to_total_ratio});
  return t;
}

Table tap_table(const std::vector<TapRow>& rows) {
  Table t{{"drop_id", "kind", "beamformer_user", "observer_user", "antenna", "tap", "re", "im", "power"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({id(r.drop_id), r.kind, id(r.beamformer_user + 1), id(r.observer_user + 1),
                      r.kind == "cir" ? Cell(id(r.antenna + 1)) : Cell(std::string()), id(r.tap), r.value.real(),
                      r.value.imag(), std::norm(r.value)});
  }
  return t;
}

Table sinr_table(const std::vector<DropResult>& drops, const std::string& scheme) {
  Table t{{"drop_id", "tier", "user", "p_sig", "p_isi", "p_co", "p_cross", "noise", "sinr_db", "scheme"}, {}};
  for (const auto& d : drops) {
    const AllocationResult* r = scheme == "distributed"     ? &d.distributed
                                : scheme == "centralized"   ? &d.centralized
                                : scheme == "tr_standalone" ? &d.tr_standalone
                                                            : &d.zf_standalone;
    const auto emit = [&](const std::vector<SinrBreakdown>& v, const char* tier) {
      for (std::size_t u = 0; u < v.size(); ++u) {
        const auto& b = v[u];
        t.rows.push_back({id(d.index), std::string(tier), id(u + 1), b.p_sig, b.p_isi, b.p_co, b.p_cross, b.noise,
                          b.sinr_db(), scheme});
      }
    };
    emit(r->macro_sinr, "macro");
    emit(r->femto_sinr, "femto");
  }
  return t;
}

Table allocation_table(const std::vector<AllocationRow>& rows, std::size_t macro_users, std::size_t femto_users) {
  Table t{allocation_columns(macro_users, femto_users), {}};
  t.columns.push_back("gamma_f_db");
  t.columns.push_back("gamma_m_db");
  for (const auto& r : rows) {
    auto row = allocation_row(r.drop_id, r.scheme, r.result, macro_users, femto_users);
    row.emplace_back(r.gamma_f_db);
    row.emplace_back(r.gamma_m_db);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table allocation_table(const std::vector<DropResult>& drops, const ScenarioConfig& config) {
  const std::size_t n0 = config.channel.macro_users, n1 = config.channel.femto_users;
  Table t{allocation_columns(n0, n1), {}};
  for (const auto& d : drops) {
    t.rows.push_back(allocation_row(d.index, "distributed", d.distributed, n0, n1));
    t.rows.push_back(allocation_row(d.index, "centralized", d.centralized, n0, n1));
    t.rows.push_back(allocation_row(d.index, "tr_standalone", d.tr_standalone, n0, n1));
    t.rows.push_back(allocation_row(d.index, "zf_standalone", d.zf_standalone, n0, n1));
  }
  return t;
}

Table gap_table(const std::vector<GapPoint>& points) {
  Table t{{"gamma_f_db", "gamma_m_db", "mean_distributed_db", "mean_centralized_db", "gap_db", "outage_rate",
           "paired_drops", "dominance_violations", "joint_target_violations"},
          {}};
  for (const auto& p : points) {
    t.rows.push_back({p.gamma_f_db, p.gamma_m_db, p.mean_distributed_db, p.mean_centralized_db, p.gap_db,
                      p.outage_rate, id(p.paired_drops), id(p.dominance_violations), id(p.joint_target_violations)});
  }
  return t;
}

Table compare_table(const std::vector<ComparePoint>& points) {
  Table t{{"gamma_f_db", "mean_tr_db", "mean_zf_db", "diff_db", "tr_outage_rate", "zf_outage_rate", "paired_drops"},
          {}};
  for (const auto& p : points) {
    t.rows.push_back(
        {p.gamma_f_db, p.mean_tr_db, p.mean_zf_db, p.diff_db, p.tr_outage_rate, p.zf_outage_rate, id(p.paired_drops)});
  }
  return t;
}

Table summary_table(const CampaignResult& result) {
  Table t{{"scheme", "feasible_drops", "mean_total_power_db", "outage_rate"}, {}};
  for (const auto& s : result.summary) t.rows.push_back({s.scheme, id(s.feasible), s.mean_power_db, s.outage_rate});
  return t;
}

nlohmann::json drop_json(const DropResult& drop, const DropState& state, const ScenarioConfig& config) {
  nlohmann::json j;
  j["drop_id"] = drop.index;
  j["seed"] = config.seed;
  j["noise_normalization"] = "0 dBm == 1 unit == noise power";
  if (!drop.error.empty()) j["error"] = drop.error;
  const auto point = [](Point p) { return nlohmann::json{{"x", p.x}, {"y", p.y}}; };
  j["geometry"]["mbs"] = point(drop.geometry.mbs);
  j["geometry"]["fbs"] = point(drop.geometry.fbs);
  for (auto p : drop.geometry.mu) j["geometry"]["mu"].push_back(point(p));
  for (auto p : drop.geometry.fu) j["geometry"]["fu"].push_back(point(p));

  const char* tiers[] = {"macro", "femto"};
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t r = 0; r < 2; ++r) {
      const std::string key = std::string(tiers[k]) + "_to_" + tiers[r];
      for (std::size_t u = 0; u < state.channels.users(r); ++u) {
        for (std::size_t i = 0; i < state.channels.antennas(k); ++i) {
          nlohmann::json taps = nlohmann::json::array();
          for (const auto& t : state.channels.at(k, r, i, u).taps) taps.push_back({t.real(), t.imag()});
          j["channels"][key].push_back({{"user", u + 1}, {"antenna", i + 1}, {"taps", taps}});
        }
      }
    }
  }
  for (const auto& f : drop.focusing)
    j["focusing"].push_back({{"peak_power", f.peak_power}, {"isi_power", f.isi_power}, {"ratio", f.peak_to_total_ratio}});
  if (drop.selection) {
    j["tap_selection"]["alpha"] = drop.selection->alpha;
    j["tap_selection"]["gamma"] = drop.selection->gamma;
  } else {
    j["tap_selection"] = nullptr;
  }
  j["schemes"]["distributed"] = allocation_json(drop.distributed);
  j["schemes"]["centralized"] = allocation_json(drop.centralized);
  j["schemes"]["tr_standalone"] = allocation_json(drop.tr_standalone);
  j["schemes"]["zf_standalone"] = allocation_json(drop.zf_standalone);
  j["distributed_meets_joint_targets"] = drop.distributed_meets_joint_targets;
  j["fbs_cap_violated"] = drop.fbs_cap_violated;
  return j;
}

}  // namespace hetnet
