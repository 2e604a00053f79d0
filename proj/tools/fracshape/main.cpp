#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fracshape::cli;
  CLI::App app{"Shape-derivative validation runner for fractional Green functions on balls"};
  std::string command, config_path, out_path, csv_path;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  app.add_option("command", command, "Suite to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "Scenario JSON file")->required();
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "Also write per-check errors as CSV");
  auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp and runtimes for byte-stable reports");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const Command cmd = *parse_command(command);
  ScenarioConfig cfg;
  try {
    cfg = load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    require_inputs(cmd, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckRecord> checks = run(cmd, cfg);
  ReportMeta meta;
  meta.command = command;
  meta.include_runtimes = !no_timestamp;
  if (!no_timestamp) meta.timestamp = utc_timestamp();
  meta.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (out_path.empty()) {
    write_report(std::cout, cfg, checks, meta);
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot write report to '" << out_path << "'\n";
      return 2;
    }
    write_report(os, cfg, checks, meta);
  }
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) {
      std::cerr << "cannot write CSV to '" << csv_path << "'\n";
      return 2;
    }
    write_csv(os, checks);
  }
  for (const auto& r : checks)
    if (!r.pass) std::cerr << "FAIL " << r.check << " " << r.point << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
  return all_passed(checks) ? 0 : 1;
}
