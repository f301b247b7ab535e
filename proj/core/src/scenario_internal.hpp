#pragma once

#include <string>
#include <vector>

namespace parageo::detail {

struct BuiltinScenario {
  std::string name;
  std::vector<std::string> aliases;
  std::string description;
  /// JSON document fed through load_scenario_config.
  std::string document;
};

const std::vector<BuiltinScenario>& builtin_scenarios();

}  // namespace parageo::detail
