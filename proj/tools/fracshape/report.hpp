#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace fracshape::cli {

enum class ToleranceKind { relative, absolute };

struct CheckRecord {
  std::string check;  // suite/case, e.g. "green/translation"
  std::string point;
  double formula = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  double absolute_tolerance = 0.0;
  ToleranceKind tolerance_kind = ToleranceKind::relative;
  bool pass = false;
  double runtime_s = 0.0;
  std::string note;
};

/// Fills errors and the verdict: relative error against |oracle|, or the
/// absolute error when |oracle| <= absolute_tolerance.
[[nodiscard]] CheckRecord make_record(std::string check, std::string point, double formula, double oracle,
                                      double tolerance, double absolute_tolerance);
/// A check that could not be evaluated; it fails with the reason as its note.
[[nodiscard]] CheckRecord failed_record(std::string check, std::string point, std::string reason);

[[nodiscard]] std::string format_point(const Vec& x);

struct ReportMeta {
  std::string command;
  std::optional<std::string> timestamp;  // absent with --no-timestamp
  bool include_runtimes = true;
  double runtime_s = 0.0;
};

/// Writes the report with fixed field order, 17 significant digits and
/// null for non-finite numbers.
void write_report(std::ostream& os, const ScenarioConfig& c, const std::vector<CheckRecord>& checks,
                  const ReportMeta& meta);
void write_csv(std::ostream& os, const std::vector<CheckRecord>& checks);

[[nodiscard]] bool all_passed(const std::vector<CheckRecord>& checks);

}  // namespace fracshape::cli
