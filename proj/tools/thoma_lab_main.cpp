// thoma-lab: exact verification suites for the character and limit-cycle
// machinery, driven by a JSON config.
//
//   thoma-lab character --config cfg.json [--out table.json] [--csv table.csv]
//   thoma-lab verify    --suite <name> [--config cfg.json] [--seed N] [--out report.json]
//   thoma-lab report    [--config cfg.json] [--out report.json] [--csv table.csv]
//
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 resource cap,
// 4 output error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "thomalab/errors.hpp"
#include "thomalab/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitOutputError = 4;

thomalab::ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw thomalab::ConfigError("cannot open config: " + path);
  thomalab::Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw thomalab::ConfigError(std::string("config parse: ") + e.what());
  }
  return thomalab::config_from_json(j);
}

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output: " << path << "\n";
    return kExitOutputError;
  }
  out << text;
  return out ? kExitOk : kExitOutputError;
}

void print_summary(const thomalab::VerificationReport& report) {
  std::cerr << "[" << report.suite << "] " << (report.records.size() - report.failures())
            << "/" << report.records.size() << " checks passed in " << report.wall_seconds
            << " s\n";
  for (const auto& r : report.records)
    if (!r.pass)
      std::cerr << "  FAIL " << r.label << ": lhs=" << r.lhs << " rhs=" << r.rhs << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification lab for characters of the infinite symmetric group"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, suite;
  std::uint64_t seed = 0;
  bool seed_set = false;

  CLI::App* cmd_character = app.add_subcommand("character", "character table: formula vs model");
  cmd_character->add_option("--config", config_path, "config JSON path");
  cmd_character->add_option("--out", out_path, "JSON output path (default stdout)");
  cmd_character->add_option("--csv", csv_path, "CSV output path");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run one verification suite");
  cmd_verify->add_option("--config", config_path, "config JSON path");
  cmd_verify->add_option("--suite", suite, "suite name")->required();
  cmd_verify->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  cmd_verify->add_option("--out", out_path, "report JSON path (default stdout)");

  CLI::App* cmd_report = app.add_subcommand("report", "run suites and merge reports");
  cmd_report->add_option("--config", config_path, "config JSON path");
  cmd_report->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  cmd_report->add_option("--out", out_path, "merged JSON path (default stdout)");
  cmd_report->add_option("--csv", csv_path, "trace table CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    thomalab::ExperimentConfig config = load_config(config_path);
    if (seed_set) config.seed = seed;

    if (*cmd_character) {
      const auto rows = thomalab::character_table(config);
      const thomalab::Json j = thomalab::character_table_to_json(config, rows);
      const int rc = write_output(out_path, j.dump(2) + "\n");
      if (rc != kExitOk) return rc;
      if (!csv_path.empty()) {
        const int csv_rc = write_output(csv_path, thomalab::character_table_to_csv(rows));
        if (csv_rc != kExitOk) return csv_rc;
      }
      for (const auto& row : rows)
        if (!row.equal) return kExitVerificationFailure;
      return kExitOk;
    }

    if (*cmd_verify) {
      if (!thomalab::is_suite_name(suite)) {
        std::cerr << "unknown suite: " << suite << "\nknown suites:";
        for (const auto& name : thomalab::suite_names()) std::cerr << " " << name;
        std::cerr << "\n";
        return kExitConfigError;
      }
      const thomalab::VerificationReport report = thomalab::run_suite(suite, config);
      print_summary(report);
      const int rc = write_output(out_path, thomalab::report_to_json(report).dump(2) + "\n");
      if (rc != kExitOk) return rc;
      return report.passed() ? kExitOk : kExitVerificationFailure;
    }

    // report: run the selected suites and merge. An absent selection means
    // all suites; an explicitly empty list yields an empty report.
    std::vector<std::string> selected =
        config.suites_selected ? config.suites : thomalab::suite_names();
    thomalab::Json merged;
    merged["config"] = thomalab::config_to_json(config);
    merged["suites"] = thomalab::Json::array();
    bool all_passed = true;
    for (const auto& name : selected) {
      const thomalab::VerificationReport report = thomalab::run_suite(name, config);
      print_summary(report);
      all_passed &= report.passed();
      merged["suites"].push_back(thomalab::report_to_json(report));
    }
    merged["passed"] = all_passed;
    const int rc = write_output(out_path, merged.dump(2) + "\n");
    if (rc != kExitOk) return rc;
    if (!csv_path.empty()) {
      const auto rows = thomalab::character_table(config);
      const int csv_rc = write_output(csv_path, thomalab::character_table_to_csv(rows));
      if (csv_rc != kExitOk) return csv_rc;
    }
    return all_passed ? kExitOk : kExitVerificationFailure;
  } catch (const thomalab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const thomalab::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const thomalab::ContractError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
}
