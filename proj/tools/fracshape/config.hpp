#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracshape/finite_difference.hpp"
#include "fracshape/fields.hpp"
#include "fracshape/geometry.hpp"

namespace fracshape::cli {

using Json = nlohmann::ordered_json;

// Malformed or out-of-range configuration; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowConfig {
  std::string kind;  // translation | dilation | affine
  double scale_rate = 0.0;
  Vec translation;

  [[nodiscard]] AffineFlow flow() const { return AffineFlow(scale_rate, translation); }
  [[nodiscard]] std::string label() const;
};

struct SourceConfig {
  std::string kind = "constant";  // constant | affine | quadratic
  double c0 = 1.0;
  Vec gradient;
  double quadratic = 0.0;

  [[nodiscard]] SourceTerm term(const BallDomain& d) const;
  [[nodiscard]] std::string label() const;
};

struct BumpConfig {
  Vec center;
  double width = 0.0;
};

struct OrderConfig {
  int boundary = 64;
  int volume = 20;
  int trace_levels = 3;
  bool adaptive_boundary = false;
};

struct ToleranceConfig {
  double green = 1e-3;
  double solution = 1e-3;             // closed-form traces (constant h)
  double solution_quadrature = 5e-3;  // numerically traced solutions
  double robin = 1e-3;
  double appendix_c = 2e-2;
  double duality = 1e-3;
  double gradient_identity = 1e-3;
  double absolute = 1e-6;             // used when the reference is below this in magnitude
};

struct AppendixCConfig {
  Vec x;
  std::vector<BumpConfig> bumps;
  std::vector<Mat> jacobians;
  int random_jacobians = 0;  // extra DY(x) drawn from the seeded generator
};

struct DualityConfig {
  std::vector<std::string> fields{"one", "normal:0"};  // one | normal:<axis>
};

struct PropsConfig {
  std::size_t samples = 1000;
  bool calibrate = false;
};

struct ScenarioConfig {
  int dimension = 1;
  double s = 0.5;
  Vec center;
  double radius = 1.0;
  std::vector<FlowConfig> flows;
  std::vector<SourceConfig> sources;
  std::vector<Vec> points;
  std::vector<std::pair<Vec, Vec>> pairs;
  OrderConfig orders;
  FDSchedule fd;
  ToleranceConfig tolerances;
  std::uint64_t seed = 20261014;
  AppendixCConfig appendix_c;
  DualityConfig duality;
  PropsConfig props;

  [[nodiscard]] BallDomain domain() const { return BallDomain(center, radius); }
};

/// Parses and validates; every numeric field is checked against the
/// preconditions of the routine that will consume it.
[[nodiscard]] ScenarioConfig parse_config(const Json& j);
/// Reads a file; parse errors report line and column.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);
[[nodiscard]] Json to_json(const ScenarioConfig& c);

}  // namespace fracshape::cli
