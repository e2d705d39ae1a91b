#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tamp/scenarios.hpp"

namespace tamp {

/// Scenario configuration file (JSON):
///
///   {
///     "schema_version": 1,
///     "scenario": "pick_place_2d",
///     "params": { "robot_radius": 0.05, ... },
///     "planner": { "samples_per_expansion": 10, "transitions_per_expansion": 1 }
///   }
///
/// "params" and "planner" are optional. Parameter values are numbers
/// (booleans are accepted for flags).
struct ScenarioConfig {
    std::string id;
    ScenarioParams params;
    PlannerDefaults planner;
    std::shared_ptr<const Scenario> scenario;
};

inline constexpr int kScenarioSchemaVersion = 1;

/// Throws UsageError on malformed JSON, unknown fields or bad parameters.
ScenarioConfig parse_scenario_config(const std::string& text);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

}  // namespace tamp
