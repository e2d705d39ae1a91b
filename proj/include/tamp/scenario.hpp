#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamp/orbits.hpp"
#include "tamp/tamp_path.hpp"

namespace tamp {

/// Thrown by scenarios that have no trustworthy optimal-cost oracle.
class NoOracleError : public std::runtime_error {
public:
    explicit NoOracleError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleResult {
    double cost;
    TampPath witness;
};

/// Planner settings a scenario recommends when none are given explicitly.
struct PlannerDefaults {
    std::size_t samples_per_expansion = 10;
    std::size_t transitions_per_expansion = 1;
};

/// A multi-modal planning problem: an orbit factory keyed by canonical orbit
/// keys, transition samplers, a start and a goal.
///
/// Implementations are immutable after construction and safe to share
/// between threads.
class Scenario {
public:
    virtual ~Scenario() = default;

    virtual std::string id() const = 0;
    virtual OrbitKey start_orbit() const = 0;
    virtual Point start() const = 0;

    /// Builds the orbit with the given canonical key. Throws UsageError for
    /// keys the scenario does not know.
    virtual OrbitSpec orbit(const OrbitKey& key) const = 0;

    /// Up to `count` transitions out of `from`, sampled uniformly on the
    /// transition submanifold.
    virtual std::vector<TransitionState> sample_transitions(const OrbitSpec& from, Rng& rng,
                                                            std::size_t count) const = 0;

    virtual bool is_goal(const OrbitKey& orbit, const Point& p) const = 0;

    /// Explicit goal configurations to insert into an orbit's roadmap.
    virtual std::vector<Point> goal_configurations(const OrbitKey& /*orbit*/) const { return {}; }

    /// Optimal cost and a witness path. Throws NoOracleError when unsupported.
    virtual OracleResult oracle() const { throw NoOracleError("no oracle for scenario '" + id() + "'"); }

    virtual PlannerDefaults planner_defaults() const { return {}; }
};

}  // namespace tamp
