#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace fracshape::cli {

enum class Command { green, solution, robin, appendix_c, duality, gradient_identity, props, all };

[[nodiscard]] std::optional<Command> parse_command(std::string_view name);
[[nodiscard]] std::string_view command_name(Command c);
[[nodiscard]] const std::vector<std::string>& command_names();

/// Throws ConfigError when the scenario lacks what the command consumes
/// (flows, points, pairs). `all` only needs whatever its runnable suites use.
void require_inputs(Command cmd, const ScenarioConfig& c);

/// Runs the suites in config order. Numerical failures become failed records.
[[nodiscard]] std::vector<CheckRecord> run(Command cmd, const ScenarioConfig& c);

// Individual suites, exposed for the acceptance harness.
[[nodiscard]] std::vector<CheckRecord> run_green(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_solution(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_robin(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_appendix_c(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_duality(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_gradient_identity(const ScenarioConfig& c);
[[nodiscard]] std::vector<CheckRecord> run_props(const ScenarioConfig& c);

}  // namespace fracshape::cli
