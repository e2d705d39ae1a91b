#include "tamp/scenario_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tamp/errors.hpp"

namespace tamp {

namespace {

using json = nlohmann::json;

std::size_t positive_count(const json& v, const std::string& name) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw UsageError("scenario config: planner." + name + " must be a positive integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("scenario config: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("scenario config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "schema_version" && key != "scenario" && key != "params" && key != "planner") {
            throw UsageError("scenario config: unknown field '" + key + "'");
        }
    }
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        throw UsageError("scenario config: missing integer schema_version");
    }
    if (doc["schema_version"].get<int>() != kScenarioSchemaVersion) {
        throw UsageError("scenario config: unsupported schema_version " + doc["schema_version"].dump());
    }
    if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
        throw UsageError("scenario config: missing string field 'scenario'");
    }

    ScenarioConfig cfg;
    cfg.id = doc["scenario"].get<std::string>();
    if (doc.contains("params")) {
        const auto& params = doc["params"];
        if (!params.is_object()) throw UsageError("scenario config: 'params' must be an object");
        for (const auto& [key, value] : params.items()) {
            if (value.is_boolean()) {
                cfg.params[key] = value.get<bool>() ? 1.0 : 0.0;
            } else if (value.is_number()) {
                cfg.params[key] = value.get<double>();
            } else {
                throw UsageError("scenario config: parameter '" + key + "' must be a number");
            }
        }
    }
    auto scenario = build_scenario(cfg.id, cfg.params);
    cfg.planner = scenario->planner_defaults();
    if (doc.contains("planner")) {
        const auto& planner = doc["planner"];
        if (!planner.is_object()) throw UsageError("scenario config: 'planner' must be an object");
        for (const auto& [key, value] : planner.items()) {
            if (key == "samples_per_expansion") {
                cfg.planner.samples_per_expansion = positive_count(value, key);
            } else if (key == "transitions_per_expansion") {
                cfg.planner.transitions_per_expansion = positive_count(value, key);
            } else {
                throw UsageError("scenario config: unknown planner field '" + key + "'");
            }
        }
    }
    cfg.scenario = std::move(scenario);
    return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read scenario file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario_config(text.str());
}

}  // namespace tamp
