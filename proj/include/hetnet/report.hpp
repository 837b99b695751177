#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hetnet/campaign.hpp"

namespace hetnet {

enum class OutputFormat { kCsv, kJson };

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-named rows. CSV and JSON outputs share the column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
/// Array of objects; non-finite doubles become null.
nlohmann::json to_json(const Table& table);
/// Writes <dir>/<stem>.csv or <dir>/<stem>.json and returns the path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, const std::string& stem,
                                  OutputFormat format);

Table focusing_table(const std::vector<FocusingRow>& rows);
Table tap_table(const std::vector<TapRow>& rows);
/// Actual per-user SINR breakdowns of one scheme for every drop.
Table sinr_table(const std::vector<DropResult>& drops, const std::string& scheme);
Table allocation_table(const std::vector<AllocationRow>& rows, std::size_t macro_users, std::size_t femto_users);
/// Per-drop rows of the four schemes of a campaign.
Table allocation_table(const std::vector<DropResult>& drops, const ScenarioConfig& config);
Table gap_table(const std::vector<GapPoint>& points);
Table compare_table(const std::vector<ComparePoint>& points);
Table summary_table(const CampaignResult& result);

nlohmann::json drop_json(const DropResult& drop, const DropState& state, const ScenarioConfig& config);

}  // namespace hetnet
