#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tamp/planner.hpp"
#include "tamp/scenario_config.hpp"

namespace tamp {

/// One planner run. Missing values (no path, no oracle, untimed) are NaN
/// and written as empty CSV fields.
struct RunRecord {
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string radius_mode;
    bool success = false;
    double cost = 0.0;
    double oracle_cost = 0.0;
    double cost_ratio = 0.0;
    std::size_t orbit_count = 0;
    std::size_t total_vertices = 0;
    std::size_t total_edges = 0;
    double wall_time_ms = 0.0;
};

struct RunSettings {
    RadiusRule radius_rule{};
    double resolution = 0.0;
    bool strict_batch = false;
    bool timing = false;
};

struct RunOutput {
    RunRecord record;
    PlanResult result;
};

PlannerConfig planner_config(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed, const RunSettings& s);

/// Runs the planner once. oracle_cost may be NaN when unavailable.
RunOutput run_single(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed, const RunSettings& settings,
                     double oracle_cost);

/// Oracle cost of the scenario, NaN when it has none.
double oracle_cost_or_nan(const Scenario& scenario);

struct SweepConfig {
    ScenarioConfig scenario;
    std::vector<std::size_t> n_values;
    std::vector<std::uint64_t> seeds;
    std::vector<RadiusRule> modes;
    double resolution = 0.0;
    bool strict_batch = false;
    bool timing = false;
    std::size_t threads = 0;  ///< 0: TAMP_THREADS or the hardware default
    std::optional<std::filesystem::path> path_dir;  ///< write one path file per successful row
};

struct SweepSummary {
    std::size_t n = 0;
    std::string radius_mode;
    std::size_t runs = 0;
    double success_rate = 0.0;
    double median_ratio = 0.0;  ///< failed runs count as +inf
    double p90_ratio = 0.0;
    double mean_edges = 0.0;
};

struct SweepResult {
    std::vector<RunRecord> rows;  ///< sorted by (n, mode, seed)
    std::vector<SweepSummary> summary;
};

/// Throws UsageError when n values are not strictly increasing, or seeds or
/// modes are empty.
void validate_sweep_config(const SweepConfig& cfg);
SweepResult run_sweep(const SweepConfig& cfg);
std::vector<SweepSummary> summarize(const std::vector<RunRecord>& rows);
std::size_t sweep_thread_count(std::size_t requested);

/// Linear-interpolation (type 7) quantile of unsorted values.
double quantile(std::vector<double> values, double q);

std::string csv_header();
std::string csv_row(const RunRecord& r);
void write_csv(std::ostream& os, const SweepResult& result);
/// Reads the data rows of a CSV written by write_csv.
std::vector<RunRecord> read_csv(std::istream& is);

std::string path_file_name(const RunRecord& r);

/// Re-validates the stored path files of up to `count` randomly chosen
/// successful rows. Returns one message per problem found.
std::vector<std::string> spot_check_paths(const std::vector<RunRecord>& rows, const std::filesystem::path& dir,
                                          const Scenario& scenario, std::size_t count, std::uint64_t seed);

/// Empty-region Monte-Carlo experiment over n uniform samples in the unit
/// cube: how often a region at the cube centre receives no sample.
struct BoundsConfig {
    enum class Region { ball, cone };
    Region region = Region::ball;
    int d = 2;
    std::size_t n = 100;
    std::size_t trials = 2000;
    double phi = 0.5;      ///< cone opening fraction (2D only), in (0, 0.5]
    double radius = 0.0;   ///< <= 0: prm_star_radius(n, d, 1)
    std::uint64_t seed = 0;
};

struct BoundsReport {
    BoundsConfig config;
    double region_radius = 0.0;  ///< ball: radius / 2; cone: radius
    std::size_t empty_trials = 0;
    double empirical = 0.0;
    double bound = 0.0;
    double std_error = 0.0;  ///< sqrt(bound (1 - bound) / trials)
    bool pass = false;       ///< empirical <= bound + 3 std_error
};

BoundsReport run_bounds(const BoundsConfig& cfg);
std::string format_bounds_report(const BoundsReport& r);

}  // namespace tamp
