#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parageo/chart.hpp"
#include "parageo/maps.hpp"
#include "parageo/report.hpp"
#include "parageo/structures.hpp"

namespace parageo {

struct StructureEntry {
  std::string label;
  AnyStructure structure;
  /// Box the sample points are drawn from (defaults to the chart domain).
  Box sample_box;
  /// Class the classification check must find, when set.
  std::optional<StructureClass> expected_class;
  /// Attached to every report that involves this structure.
  std::vector<std::string> notes;
};

struct MapEntry {
  SmoothMap map;
  std::string source;
  std::string target;
  std::optional<MapKind> kind;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<ChartPtr> charts;
  std::vector<StructureEntry> structures;
  std::optional<MapEntry> map;
  /// Default check selection; empty means every applicable check.
  std::vector<std::string> suite;
  /// Report names (or "label.*" patterns) that are supposed to fail.
  std::vector<std::string> expect_fail;
  std::vector<std::string> notes;
  double tol = 1e-7;
  std::size_t samples = 64;
  std::uint64_t seed = 42;

  const StructureEntry& structure(std::string_view label) const;
  bool expects_failure(std::string_view report_name) const;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

/// Built-in scenarios, in registry order.
std::vector<ScenarioInfo> scenario_registry();
/// Throws ConfigError for unknown names.
Scenario load_scenario(std::string_view name);
/// Builds a scenario from a JSON document; schema violations raise
/// ConfigError carrying a JSON pointer to the offending value.
Scenario load_scenario_config(std::string_view json_text);
Scenario load_scenario_file(const std::filesystem::path& path);

struct SuiteOptions {
  /// Check names or full report names; nullopt uses the scenario default.
  std::optional<std::vector<std::string>> checks;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

/// Every check name understood by run_suite.
std::vector<std::string> available_checks();

/// Runs the selected checks; reports are named "<structure>.<check>" or
/// "map.<check>" and sorted by name. Evaluation errors become failed
/// reports with an infinite residual.
std::vector<CheckReport> run_suite(const Scenario& scenario, const SuiteOptions& options = {});

}  // namespace parageo
