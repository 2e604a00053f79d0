#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string_view>

namespace fracshape::cli {
namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(std::string_view s) { return Json(std::string(s)).dump(); }

// Writes nlohmann values with the same float formatting as the records.
void emit(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << inner << json_string(it.key()) << ": ";
      emit(os, it.value(), indent + 2);
    }
    os << "\n" << pad << "}";
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && e.is_primitive();
    if (flat) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        emit(os, j[i], indent);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      emit(os, j[i], indent + 2);
    }
    os << "\n" << pad << "]";
  } else if (j.is_number_float()) {
    os << number(j.get<double>());
  } else {
    os << j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CheckRecord make_record(std::string check, std::string point, double formula, double oracle, double tolerance,
                        double absolute_tolerance) {
  CheckRecord r;
  r.check = std::move(check);
  r.point = std::move(point);
  r.formula = formula;
  r.oracle = oracle;
  r.tolerance = tolerance;
  r.absolute_tolerance = absolute_tolerance;
  r.abs_error = std::fabs(formula - oracle);
  r.rel_error = oracle != 0.0 ? r.abs_error / std::fabs(oracle) : (r.abs_error == 0.0 ? 0.0 : INFINITY);
  if (std::fabs(oracle) <= absolute_tolerance) {
    r.tolerance_kind = ToleranceKind::absolute;
    r.pass = r.abs_error <= absolute_tolerance;
  } else {
    r.pass = r.rel_error <= tolerance;
  }
  if (!std::isfinite(formula) || !std::isfinite(oracle)) r.pass = false;
  return r;
}

CheckRecord failed_record(std::string check, std::string point, std::string reason) {
  CheckRecord r;
  r.check = std::move(check);
  r.point = std::move(point);
  r.formula = r.oracle = r.abs_error = r.rel_error = NAN;
  r.note = std::move(reason);
  return r;
}

std::string format_point(const Vec& x) {
  std::string s = "(";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) s += ";";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    s += buf;
  }
  return s + ")";
}

bool all_passed(const std::vector<CheckRecord>& checks) {
  for (const auto& r : checks)
    if (!r.pass) return false;
  return true;
}

void write_report(std::ostream& os, const ScenarioConfig& c, const std::vector<CheckRecord>& checks,
                  const ReportMeta& meta) {
  os << "{\n";
  os << "  \"tool\": \"fracshape\",\n";
  os << "  \"version\": \"0.1.0\",\n";
  os << "  \"command\": " << json_string(meta.command) << ",\n";
  if (meta.timestamp) os << "  \"timestamp\": " << json_string(*meta.timestamp) << ",\n";
  os << "  \"seed\": " << c.seed << ",\n";
  os << "  \"scenario\": ";
  emit(os, to_json(c), 2);
  os << ",\n  \"checks\": [";
  std::size_t passed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& r = checks[i];
    passed += r.pass ? 1 : 0;
    os << (i ? ",\n" : "\n") << "    {";
    os << "\"check\": " << json_string(r.check);
    os << ", \"point\": " << json_string(r.point);
    os << ", \"formula\": " << number(r.formula);
    os << ", \"oracle\": " << number(r.oracle);
    os << ", \"abs_error\": " << number(r.abs_error);
    os << ", \"rel_error\": " << number(r.rel_error);
    os << ", \"tolerance\": " << number(r.tolerance_kind == ToleranceKind::absolute ? r.absolute_tolerance : r.tolerance);
    os << ", \"tolerance_kind\": " << (r.tolerance_kind == ToleranceKind::absolute ? "\"absolute\"" : "\"relative\"");
    os << ", \"pass\": " << (r.pass ? "true" : "false");
    if (meta.include_runtimes) os << ", \"runtime_s\": " << number(r.runtime_s);
    if (!r.note.empty()) os << ", \"note\": " << json_string(r.note);
    os << "}";
  }
  os << (checks.empty() ? "],\n" : "\n  ],\n");
  os << "  \"summary\": {\"checks\": " << checks.size() << ", \"passed\": " << passed
     << ", \"failed\": " << checks.size() - passed << ", \"all_passed\": "
     << (passed == checks.size() ? "true" : "false");
  if (meta.include_runtimes) os << ", \"runtime_s\": " << number(meta.runtime_s);
  os << "}\n}\n";
}

void write_csv(std::ostream& os, const std::vector<CheckRecord>& checks) {
  os << "check,point,formula,oracle,abs_err,rel_err,pass\n";
  for (const auto& r : checks)
    os << csv_field(r.check) << "," << csv_field(r.point) << "," << number(r.formula) << "," << number(r.oracle)
       << "," << number(r.abs_error) << "," << number(r.rel_error) << "," << (r.pass ? "true" : "false") << "\n";
}

}  // namespace fracshape::cli
