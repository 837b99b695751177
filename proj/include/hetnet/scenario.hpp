#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetnet/channel.hpp"
#include "hetnet/power_control.hpp"

namespace hetnet {

struct SweepRange {
  double start = -10.0;
  double stop = 10.0;
  double step = 1.0;

  /// start, start+step, ... up to stop (inclusive, with a half-step guard).
  std::vector<double> values() const;
};

/// Everything a campaign needs. Defaults are the Table I scenario.
struct ScenarioConfig {
  ChannelConfig channel;
  std::string macro_profile_source = "itu_vehicular_a";
  std::string femto_profile_source = "itu_indoor_a";
  std::string cross_profile_source = "itu_indoor_a";

  double gamma_m_db = -80.0;
  double gamma_f_db = -10.0;
  double p_tol01_dbm = -7.0;
  double p_tol10_dbm = -7.0;
  double fbs_power_cap_dbm = 20.0;
  double noise_power = 1.0;
  std::size_t drops = 1000;
  std::uint64_t seed = 1;
  bool enable_p_tol10_cap = false;
  bool macro_uses_actual_cross = true;

  std::vector<double> gap_gamma_m_db{-80.0, -85.0};
  SweepRange gamma_f_sweep_db{};
  double compare_fu_distance_m = 7.0;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
  /// Non-fatal issues (e.g. femto ZF dimensions too small for full row rank).
  std::vector<std::string> warnings() const;

  PowerControlParams power_params() const;
  std::vector<double> gamma_m(double db) const { return std::vector<double>(channel.macro_users, db_to_linear(db)); }
  std::vector<double> gamma_f(double db) const { return std::vector<double>(channel.femto_users, db_to_linear(db)); }
};

ScenarioConfig table1_config();

/// Flat JSON object; keys override the Table I defaults. Unknown keys are errors.
ScenarioConfig parse_config_json(const std::string& text);
/// "tableI" / "table1" for the built-in scenario, otherwise a file path.
ScenarioConfig load_config(const std::string& name_or_path);
nlohmann::json config_to_json(const ScenarioConfig& config);

}  // namespace hetnet
