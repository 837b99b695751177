// Command-line driver for the two-tier TR/ZF link simulator.
//
//   hetnet_sim focusing|gap|compare|drop|campaign [--config tableI|<file>]
//              [--seed N] [--drops N] [--out DIR] [--format csv|json] [--serial]
//
// Exit status: 0 success, 1 configuration error, 2 campaign failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hetnet/campaign.hpp"
#include "hetnet/error.hpp"
#include "hetnet/report.hpp"
#include "hetnet/scenario.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kCampaignError = 2;

struct Options {
  std::string config = "tableI";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> drops;
  std::string out;
  std::string format = "csv";
  bool serial = false;
  std::size_t index = 0;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "built-in scenario (tableI) or JSON config file");
  cmd->add_option("--seed", o.seed, "campaign seed");
  cmd->add_option("--drops", o.drops, "number of user drops")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory (default: $HETNET_OUT_DIR or .)");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--serial", o.serial, "use the serial reference driver");
}

std::filesystem::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("HETNET_OUT_DIR"); env && *env) return env;
  return ".";
}

void announce(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << '\n'; }

int run(const std::string& command, const Options& o) {
  hetnet::ScenarioConfig config;
  try {
    config = hetnet::load_config(o.config);
    if (o.seed) config.seed = *o.seed;
    if (o.drops) config.drops = *o.drops;
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  for (const auto& w : config.warnings()) std::cerr << "warning: " << w << '\n';

  const auto exec = o.serial ? hetnet::Execution::kSerial : hetnet::Execution::kParallel;
  const auto fmt = o.format == "json" ? hetnet::OutputFormat::kJson : hetnet::OutputFormat::kCsv;
  const auto dir = output_dir(o);
  const std::size_t n0 = config.channel.macro_users, n1 = config.channel.femto_users;

  try {
    if (command == "focusing") {
      const auto study = hetnet::run_focusing_study(config, exec);
      announce(hetnet::write_table(hetnet::focusing_table(study.reports), dir, "focusing", fmt));
      announce(hetnet::write_table(hetnet::tap_table(study.taps), dir, "focusing_taps", fmt));
    } else if (command == "gap") {
      const auto study = hetnet::run_gap_study(config, exec);
      announce(hetnet::write_table(hetnet::gap_table(study.points), dir, "gap", fmt));
      announce(hetnet::write_table(hetnet::allocation_table(study.rows, n0, n1), dir, "gap_allocations", fmt));
      for (const auto& p : study.points) {
        if (p.paired_drops == 0) {
          std::cerr << "no jointly feasible drops at gamma_F=" << p.gamma_f_db << " dB, gamma_M=" << p.gamma_m_db
                    << " dB\n";
        }
      }
    } else if (command == "compare") {
      const auto study = hetnet::run_compare_study(config, exec);
      announce(hetnet::write_table(hetnet::compare_table(study.points), dir, "compare", fmt));
      announce(hetnet::write_table(hetnet::allocation_table(study.rows, n0, n1), dir, "compare_allocations", fmt));
      std::cout << "sign changes: " << study.sign_changes
                << ", peak TR advantage: " << hetnet::format_double(study.peak_tr_advantage_db) << " dB\n";
    } else if (command == "drop") {
      const auto result = hetnet::run_drop(config, o.index);
      const auto state = hetnet::prepare_drop(config.channel, config.seed, o.index, config.noise_power);
      std::filesystem::create_directories(dir);
      const auto path = dir / "drop.json";
      std::ofstream out(path);
      out << hetnet::drop_json(result, state, config).dump(2) << '\n';
      if (!out) throw std::runtime_error("failed writing " + path.string());
      announce(path);
      if (fmt == hetnet::OutputFormat::kCsv) {
        const std::vector<hetnet::DropResult> one{result};
        announce(hetnet::write_table(hetnet::sinr_table(one, "distributed"), dir, "drop_sinr", fmt));
        announce(hetnet::write_table(hetnet::allocation_table(one, config), dir, "drop_allocations", fmt));
      }
      if (!result.error.empty()) {
        std::cerr << "drop failed: " << result.error << '\n';
        return kCampaignError;
      }
    } else if (command == "campaign") {
      const auto result = hetnet::run_campaign(config, exec);
      announce(hetnet::write_table(hetnet::allocation_table(result.drops, config), dir, "allocations", fmt));
      announce(hetnet::write_table(hetnet::sinr_table(result.drops, "distributed"), dir, "sinr", fmt));
      announce(hetnet::write_table(hetnet::summary_table(result), dir, "summary", fmt));
      std::cout << "mean gap (distributed - centralized): " << hetnet::format_double(result.mean_gap_db) << " dB\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "campaign failed: " << e.what() << '\n';
    return kCampaignError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier HetNet link simulator: TR femtocell, ZF macrocell, distributed power allocation"};
  app.require_subcommand(1);
  Options opts;

  auto* focusing = app.add_subcommand("focusing", "TR focusing reports and equivalent-channel tap dumps");
  auto* gap = app.add_subcommand("gap", "distributed vs centralized power over a gamma_F sweep per gamma_M");
  auto* compare = app.add_subcommand("compare", "TR vs ZF femtocell power over a gamma_F sweep");
  auto* drop = app.add_subcommand("drop", "single-drop debug dump");
  auto* campaign = app.add_subcommand("campaign", "all schemes at the configured targets");
  for (auto* cmd : {focusing, gap, compare, drop, campaign}) add_common(cmd, opts);
  drop->add_option("--index", opts.index, "drop index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  return run(app.get_subcommands().front()->get_name(), opts);
}
