#include "tamp/tamp_path.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace tamp {

double summed_length(const TampPath& path) {
    double total = 0.0;
    for (const auto& seg : path.segments) {
        for (std::size_t i = 1; i < seg.points.size(); ++i) total += distance(seg.points[i - 1], seg.points[i]);
    }
    return total;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_coords(std::ostream& os, const Point& p) {
    for (double c : p.coords()) os << ' ' << fmt(c);
}

Point read_point(std::istringstream& in, std::size_t dim, int line_no) {
    std::array<double, Point::kMaxDim> c{};
    if (dim < 1 || dim > Point::kMaxDim) {
        throw UsageError("path file line " + std::to_string(line_no) + ": bad dimension");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(in >> c[i])) throw UsageError("path file line " + std::to_string(line_no) + ": missing coordinate");
    }
    return Point(std::span<const double>(c.data(), dim));
}

}  // namespace

void write_path_file(std::ostream& os, const TampPath& path, const PathMetadata& meta) {
    os << "# tamp-path 1\n";
    os << "# scenario " << meta.scenario << '\n';
    os << "# seed " << meta.seed << '\n';
    os << "# n " << meta.n << '\n';
    os << "# radius " << meta.radius << '\n';
    os << "# cost " << fmt(meta.cost) << '\n';
    for (std::size_t k = 0; k < path.segments.size(); ++k) {
        for (const auto& p : path.segments[k].points) {
            os << path.segments[k].orbit;
            write_coords(os, p);
            os << '\n';
        }
        if (k < path.transitions.size()) {
            const auto& t = path.transitions[k];
            os << "T " << t.source << ' ' << t.target << ' ' << t.in_source.dim();
            write_coords(os, t.in_source);
            os << ' ' << t.in_target.dim();
            write_coords(os, t.in_target);
            os << '\n';
        }
    }
}

ParsedPath read_path_file(std::istream& is) {
    ParsedPath out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool pending_segment_break = true;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream in(line);
        if (line[0] == '#') {
            std::string hash, key;
            in >> hash >> key;
            if (key == "tamp-path") {
                int version = 0;
                in >> version;
                if (version != 1) throw UsageError("unsupported path file version");
                header_seen = true;
            } else if (key == "scenario") {
                in >> out.meta.scenario;
            } else if (key == "seed") {
                in >> out.meta.seed;
            } else if (key == "n") {
                in >> out.meta.n;
            } else if (key == "radius") {
                in >> out.meta.radius;
            } else if (key == "cost") {
                in >> out.meta.cost;
            }
            continue;
        }
        if (!header_seen) throw UsageError("path file: missing '# tamp-path 1' header");
        std::string first;
        in >> first;
        if (first == "T") {
            TransitionState t{"", "", Point(1), Point(1)};
            std::size_t ds = 0, dt = 0;
            if (!(in >> t.source >> t.target >> ds)) {
                throw UsageError("path file line " + std::to_string(line_no) + ": malformed transition");
            }
            t.in_source = read_point(in, ds, line_no);
            if (!(in >> dt)) throw UsageError("path file line " + std::to_string(line_no) + ": malformed transition");
            t.in_target = read_point(in, dt, line_no);
            out.path.transitions.push_back(std::move(t));
            pending_segment_break = true;
            continue;
        }
        std::vector<double> coords;
        double v = 0.0;
        while (in >> v) coords.push_back(v);
        if (!in.eof()) throw UsageError("path file line " + std::to_string(line_no) + ": bad number");
        Point p{std::span<const double>(coords)};
        if (pending_segment_break || out.path.segments.back().orbit != first) {
            out.path.segments.push_back({first, {}});
            pending_segment_break = false;
        }
        out.path.segments.back().points.push_back(p);
    }
    if (!header_seen) throw UsageError("path file: missing '# tamp-path 1' header");
    out.path.total_cost = out.meta.cost;
    return out;
}

}  // namespace tamp
