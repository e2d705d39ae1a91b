#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tamp/geometry.hpp"
#include "tamp/orbits.hpp"

namespace tamp {

struct PathSegment {
    OrbitKey orbit;
    std::vector<Point> points;
};

/// A multi-orbit solution: segment k ends where transitions[k] leaves its
/// source chart and segment k+1 starts where it enters the target chart.
/// Transitions cost nothing.
struct TampPath {
    std::vector<PathSegment> segments;
    std::vector<TransitionState> transitions;
    double total_cost = 0.0;
};

/// Sum of consecutive-point distances over all segments.
double summed_length(const TampPath& path);

struct PathMetadata {
    std::string scenario;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string radius;
    double cost = 0.0;
};

/// Line-oriented path format:
///
///   # tamp-path 1
///   # scenario <id>
///   # seed <int>
///   # n <int>
///   # radius <mode>
///   # cost <real>
///   <orbit_key> x1 x2 ...                       one line per point
///   T <src> <dst> <d_src> x1 .. <d_dst> y1 ..   one line per transition
void write_path_file(std::ostream& os, const TampPath& path, const PathMetadata& meta);

struct ParsedPath {
    TampPath path;
    PathMetadata meta;
};

/// Throws UsageError on malformed input.
ParsedPath read_path_file(std::istream& is);

}  // namespace tamp
