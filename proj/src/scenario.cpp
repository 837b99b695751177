#include "hetnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  if (!(step > 0.0)) return out;
  for (std::size_t k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > stop + 0.5 * step) break;
    out.push_back(v);
  }
  return out;
}

ScenarioConfig table1_config() { return ScenarioConfig{}; }

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void ScenarioConfig::validate() const {
  const auto& c = channel;
  require(c.taps >= 1, "taps must be >= 1");
  require(c.macro_antennas >= 1 && c.femto_antennas >= 1, "antenna counts must be >= 1");
  require(c.macro_users >= 1, "macro_users must be >= 1");
  require(c.macro_radius_m > 0 && c.femto_radius_m > 0, "radii must be positive");
  require(c.mbs_fbs_distance_m > 0, "mbs_fbs_distance_m must be positive");
  require(!c.fu_fixed_distance_m || *c.fu_fixed_distance_m > 0, "fu_fixed_distance_m must be positive");
  require(c.exponent_outdoor > 0 && c.exponent_indoor > 0 && c.exponent_cross > 0,
          "pathloss exponents must be positive");
  require(c.sample_period_ns > 0, "sample_period_ns must be positive");
  require(c.macro_antennas * c.taps >= c.macro_users * (2 * c.taps - 1),
          "macro ZF needs macro_antennas*taps >= macro_users*(2*taps-1)");
  for (const auto* p : {&c.macro_profile, &c.femto_profile, &c.cross_profile}) {
    try {
      tap_mean_powers(*p, c.taps, c.mapping, c.sample_period_ns);
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
  require(noise_power > 0 && std::isfinite(noise_power), "noise_power must be positive");
  require(drops >= 1, "drops must be >= 1");
  require(gamma_f_sweep_db.step > 0 && gamma_f_sweep_db.start <= gamma_f_sweep_db.stop,
          "gamma_f sweep needs step > 0 and start <= stop");
  require(!gap_gamma_m_db.empty(), "gap_gamma_m_db must list at least one value");
  require(compare_fu_distance_m > 0, "compare_fu_distance_m must be positive");
  for (double v : {gamma_m_db, gamma_f_db, p_tol01_dbm, p_tol10_dbm, fbs_power_cap_dbm})
    require(std::isfinite(v), "dB/dBm parameters must be finite");
}

std::vector<std::string> ScenarioConfig::warnings() const {
  std::vector<std::string> w;
  const auto& c = channel;
  if (c.femto_users > 0 && c.femto_antennas * c.taps < c.femto_users * (2 * c.taps - 1))
    w.push_back("femto ZF comparison will be rank-deficient: femto_antennas*taps < femto_users*(2*taps-1)");
  return w;
}

PowerControlParams ScenarioConfig::power_params() const {
  PowerControlParams p;
  p.noise = noise_power;
  p.p_tol01 = dbm_to_units(p_tol01_dbm);
  p.p_tol10 = dbm_to_units(p_tol10_dbm);
  p.enable_p_tol10_cap = enable_p_tol10_cap;
  p.macro_uses_actual_cross = macro_uses_actual_cross;
  return p;
}

namespace {

std::string mapping_name(TapMapping m) { return m == TapMapping::kPerPath ? "per_path" : "sampled"; }

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("config key '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig c = table1_config();
  auto& ch = c.channel;
  using Setter = std::function<void(const nlohmann::json&, const std::string&)>;
  auto num = [](double& dst) -> Setter { return [&dst](const auto& v, const auto& k) { dst = get_as<double>(v, k); }; };
  auto cnt = [](std::size_t& dst) -> Setter { return [&dst](const auto& v, const auto& k) { dst = get_count(v, k); }; };
  auto flag = [](bool& dst) -> Setter { return [&dst](const auto& v, const auto& k) { dst = get_as<bool>(v, k); }; };
  auto text_of = [](std::string& dst) -> Setter {
    return [&dst](const auto& v, const auto& k) { dst = get_as<std::string>(v, k); };
  };

  std::string mapping = mapping_name(ch.mapping);
  const std::map<std::string, Setter> setters{
      {"taps", cnt(ch.taps)},
      {"macro_antennas", cnt(ch.macro_antennas)},
      {"femto_antennas", cnt(ch.femto_antennas)},
      {"macro_users", cnt(ch.macro_users)},
      {"femto_users", cnt(ch.femto_users)},
      {"macro_radius_m", num(ch.macro_radius_m)},
      {"femto_radius_m", num(ch.femto_radius_m)},
      {"mbs_fbs_distance_m", num(ch.mbs_fbs_distance_m)},
      {"fu_fixed_distance_m",
       [&ch](const auto& v, const auto& k) {
         if (v.is_null()) ch.fu_fixed_distance_m.reset();
         else ch.fu_fixed_distance_m = get_as<double>(v, k);
       }},
      {"pathloss_exponent_outdoor", num(ch.exponent_outdoor)},
      {"pathloss_exponent_indoor", num(ch.exponent_indoor)},
      {"pathloss_exponent_cross", num(ch.exponent_cross)},
      {"macro_profile", text_of(c.macro_profile_source)},
      {"femto_profile", text_of(c.femto_profile_source)},
      {"cross_profile", text_of(c.cross_profile_source)},
      {"tap_mapping", text_of(mapping)},
      {"sample_period_ns", num(ch.sample_period_ns)},
      {"gamma_m_db", num(c.gamma_m_db)},
      {"gamma_f_db", num(c.gamma_f_db)},
      {"p_tol01_dbm", num(c.p_tol01_dbm)},
      {"p_tol10_dbm", num(c.p_tol10_dbm)},
      {"fbs_power_cap_dbm", num(c.fbs_power_cap_dbm)},
      {"noise_power", num(c.noise_power)},
      {"drops", cnt(c.drops)},
      {"seed", [&c](const auto& v, const auto& k) {
         if (!v.is_number_integer() || v.template get<long long>() < 0) throw ConfigError("config key '" + k + "' must be a non-negative integer");
         c.seed = v.template get<std::uint64_t>();
       }},
      {"enable_p_tol10_cap", flag(c.enable_p_tol10_cap)},
      {"macro_uses_actual_cross", flag(c.macro_uses_actual_cross)},
      {"gap_gamma_m_db", [&c](const auto& v, const auto& k) { c.gap_gamma_m_db = get_as<std::vector<double>>(v, k); }},
      {"gamma_f_sweep_start_db", num(c.gamma_f_sweep_db.start)},
      {"gamma_f_sweep_stop_db", num(c.gamma_f_sweep_db.stop)},
      {"gamma_f_sweep_step_db", num(c.gamma_f_sweep_db.step)},
      {"compare_fu_distance_m", num(c.compare_fu_distance_m)},
  };

  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value, key);
  }

  if (mapping == "per_path") ch.mapping = TapMapping::kPerPath;
  else if (mapping == "sampled") ch.mapping = TapMapping::kSampled;
  else throw ConfigError("tap_mapping must be \"per_path\" or \"sampled\"");

  ch.macro_profile = load_profile(c.macro_profile_source);
  ch.femto_profile = load_profile(c.femto_profile_source);
  ch.cross_profile = load_profile(c.cross_profile_source);
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& name_or_path) {
  if (name_or_path == "tableI" || name_or_path == "table1") return table1_config();
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot open config file '" + name_or_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

nlohmann::json config_to_json(const ScenarioConfig& c) {
  const auto& ch = c.channel;
  nlohmann::json j;
  j["taps"] = ch.taps;
  j["macro_antennas"] = ch.macro_antennas;
  j["femto_antennas"] = ch.femto_antennas;
  j["macro_users"] = ch.macro_users;
  j["femto_users"] = ch.femto_users;
  j["macro_radius_m"] = ch.macro_radius_m;
  j["femto_radius_m"] = ch.femto_radius_m;
  j["mbs_fbs_distance_m"] = ch.mbs_fbs_distance_m;
  j["fu_fixed_distance_m"] = ch.fu_fixed_distance_m ? nlohmann::json(*ch.fu_fixed_distance_m) : nlohmann::json();
  j["pathloss_exponent_outdoor"] = ch.exponent_outdoor;
  j["pathloss_exponent_indoor"] = ch.exponent_indoor;
  j["pathloss_exponent_cross"] = ch.exponent_cross;
  j["macro_profile"] = c.macro_profile_source;
  j["femto_profile"] = c.femto_profile_source;
  j["cross_profile"] = c.cross_profile_source;
  j["tap_mapping"] = mapping_name(ch.mapping);
  j["sample_period_ns"] = ch.sample_period_ns;
  j["gamma_m_db"] = c.gamma_m_db;
  j["gamma_f_db"] = c.gamma_f_db;
  j["p_tol01_dbm"] = c.p_tol01_dbm;
  j["p_tol10_dbm"] = c.p_tol10_dbm;
  j["fbs_power_cap_dbm"] = c.fbs_power_cap_dbm;
  j["noise_power"] = c.noise_power;
  j["drops"] = c.drops;
  j["seed"] = c.seed;
  j["enable_p_tol10_cap"] = c.enable_p_tol10_cap;
  j["macro_uses_actual_cross"] = c.macro_uses_actual_cross;
  j["gap_gamma_m_db"] = c.gap_gamma_m_db;
  j["gamma_f_sweep_start_db"] = c.gamma_f_sweep_db.start;
  j["gamma_f_sweep_stop_db"] = c.gamma_f_sweep_db.stop;
  j["gamma_f_sweep_step_db"] = c.gamma_f_sweep_db.step;
  j["compare_fu_distance_m"] = c.compare_fu_distance_m;
  return j;
}

}  // namespace hetnet
