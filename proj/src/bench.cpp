#include "tamp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tamp/errors.hpp"

namespace tamp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_field(const std::string& s) {
    if (s.empty()) return kNaN;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("csv: bad number '" + s + "'");
    return v;
}

}  // namespace

PlannerConfig planner_config(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed, const RunSettings& s) {
    PlannerConfig pc;
    pc.samples_per_expansion = cfg.planner.samples_per_expansion;
    pc.transitions_per_expansion = cfg.planner.transitions_per_expansion;
    pc.radius_rule = s.radius_rule;
    pc.iterations = n;
    pc.resolution = s.resolution;
    pc.seed = seed;
    pc.strict_batch = s.strict_batch;
    return pc;
}

double oracle_cost_or_nan(const Scenario& scenario) {
    try {
        return scenario.oracle().cost;
    } catch (const NoOracleError&) {
        return kNaN;
    }
}

RunOutput run_single(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed, const RunSettings& settings,
                     double oracle_cost) {
    if (n < 1) throw UsageError("n must be >= 1");
    const PlannerConfig pc = planner_config(cfg, n, seed, settings);
    const auto t0 = std::chrono::steady_clock::now();
    PlanResult result = plan(*cfg.scenario, pc);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord r;
    r.scenario_id = cfg.scenario->id();
    r.seed = seed;
    r.n = n;
    r.radius_mode = settings.radius_rule.name();
    r.success = result.path.has_value();
    r.cost = r.success ? result.path->total_cost : kNaN;
    r.oracle_cost = oracle_cost;
    r.cost_ratio = r.success && oracle_cost > 0.0 ? r.cost / oracle_cost : kNaN;
    r.orbit_count = result.diagnostics.orbits.size();
    r.total_vertices = result.diagnostics.total_vertices;
    r.total_edges = result.diagnostics.total_edges;
    r.wall_time_ms = settings.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : kNaN;
    return RunOutput{std::move(r), std::move(result)};
}

void validate_sweep_config(const SweepConfig& cfg) {
    if (!cfg.scenario.scenario) throw UsageError("sweep: no scenario");
    if (cfg.n_values.empty()) throw UsageError("sweep: need at least one n value");
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        if (cfg.n_values[i] < 1) throw UsageError("sweep: n values must be >= 1");
        if (i > 0 && cfg.n_values[i] <= cfg.n_values[i - 1]) {
            throw UsageError("sweep: n values must be strictly increasing");
        }
    }
    if (cfg.seeds.empty()) throw UsageError("sweep: need at least one seed");
    if (cfg.modes.empty()) throw UsageError("sweep: need at least one radius mode");
}

std::size_t sweep_thread_count(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TAMP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw UsageError("TAMP_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string path_file_name(const RunRecord& r) {
    std::string mode = r.radius_mode;
    std::replace(mode.begin(), mode.end(), ':', '-');
    return r.scenario_id + "_" + mode + "_n" + std::to_string(r.n) + "_s" + std::to_string(r.seed) + ".path";
}

SweepResult run_sweep(const SweepConfig& cfg) {
    validate_sweep_config(cfg);
    const double oracle = oracle_cost_or_nan(*cfg.scenario.scenario);

    struct Cell {
        std::size_t n;
        std::size_t mode;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t n : cfg.n_values) {
        for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
            std::vector<std::uint64_t> seeds = cfg.seeds;
            std::sort(seeds.begin(), seeds.end());
            for (auto s : seeds) cells.push_back({n, m, s});
        }
    }
    if (cfg.path_dir) std::filesystem::create_directories(*cfg.path_dir);

    std::vector<RunRecord> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            RunSettings s{cfg.modes[c.mode], cfg.resolution, cfg.strict_batch, cfg.timing};
            try {
                auto out = run_single(cfg.scenario, c.n, c.seed, s, oracle);
                if (cfg.path_dir && out.result.path) {
                    std::ofstream f(*cfg.path_dir / path_file_name(out.record));
                    write_path_file(f, *out.result.path,
                                    {out.record.scenario_id, c.seed, c.n, out.record.radius_mode, out.record.cost});
                }
                rows[i] = std::move(out.record);
            } catch (const std::exception& e) {
                RunRecord r;
                r.scenario_id = cfg.scenario.scenario->id();
                r.seed = c.seed;
                r.n = c.n;
                r.radius_mode = s.radius_rule.name();
                r.cost = r.cost_ratio = r.wall_time_ms = kNaN;
                r.oracle_cost = oracle;
                rows[i] = r;
                std::lock_guard lock(log_mutex);
                std::fprintf(stderr, "sweep: n=%zu seed=%llu mode=%s failed: %s\n", c.n,
                             static_cast<unsigned long long>(c.seed), r.radius_mode.c_str(), e.what());
            }
        }
    };
    const std::size_t threads = std::min(sweep_thread_count(cfg.threads), cells.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    SweepResult result{std::move(rows), {}};
    result.summary = summarize(result.rows);
    return result;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    if (values[lo] == values[hi]) return values[lo];
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<SweepSummary> summarize(const std::vector<RunRecord>& rows) {
    std::vector<SweepSummary> out;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        std::vector<double> ratios;
        double successes = 0.0;
        double edges = 0.0;
        for (; j < rows.size() && rows[j].n == rows[i].n && rows[j].radius_mode == rows[i].radius_mode; ++j) {
            successes += rows[j].success ? 1.0 : 0.0;
            edges += static_cast<double>(rows[j].total_edges);
            const double r = rows[j].cost_ratio;
            ratios.push_back(rows[j].success && !std::isnan(r) ? r : std::numeric_limits<double>::infinity());
        }
        const double count = static_cast<double>(j - i);
        const bool any_ratio = std::any_of(rows.begin() + static_cast<long>(i), rows.begin() + static_cast<long>(j),
                                           [](const RunRecord& r) { return !std::isnan(r.cost_ratio); });
        out.push_back({rows[i].n, rows[i].radius_mode, j - i, successes / count,
                       any_ratio ? quantile(ratios, 0.5) : kNaN, any_ratio ? quantile(ratios, 0.9) : kNaN,
                       edges / count});
        i = j;
    }
    return out;
}

std::string csv_header() {
    return "scenario_id,seed,n,radius_mode,success,cost,oracle_cost,cost_ratio,orbit_count,total_vertices,"
           "total_edges,wall_time_ms";
}

std::string csv_row(const RunRecord& r) {
    std::ostringstream os;
    os << r.scenario_id << ',' << r.seed << ',' << r.n << ',' << r.radius_mode << ',' << (r.success ? 1 : 0) << ','
       << fmt(r.cost) << ',' << fmt(r.oracle_cost) << ',' << fmt(r.cost_ratio) << ',' << r.orbit_count << ','
       << r.total_vertices << ',' << r.total_edges << ',' << fmt(r.wall_time_ms);
    return os.str();
}

void write_csv(std::ostream& os, const SweepResult& result) {
    os << "# schema=1\n" << csv_header() << '\n';
    for (const auto& r : result.rows) os << csv_row(r) << '\n';
    os << "#summary_columns,n,radius_mode,runs,success_rate,median_cost_ratio,p90_cost_ratio,mean_total_edges\n";
    for (const auto& s : result.summary) {
        os << "#summary," << s.n << ',' << s.radius_mode << ',' << s.runs << ',' << fmt(s.success_rate) << ','
           << fmt(s.median_ratio) << ',' << fmt(s.p90_ratio) << ',' << fmt(s.mean_edges) << '\n';
    }
}

std::vector<RunRecord> read_csv(std::istream& is) {
    std::vector<RunRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line == csv_header()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 12) throw UsageError("csv: expected 12 fields in '" + line + "'");
        RunRecord r;
        r.scenario_id = f[0];
        r.seed = std::stoull(f[1]);
        r.n = std::stoul(f[2]);
        r.radius_mode = f[3];
        r.success = f[4] == "1";
        r.cost = parse_field(f[5]);
        r.oracle_cost = parse_field(f[6]);
        r.cost_ratio = parse_field(f[7]);
        r.orbit_count = std::stoul(f[8]);
        r.total_vertices = std::stoul(f[9]);
        r.total_edges = std::stoul(f[10]);
        r.wall_time_ms = parse_field(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> spot_check_paths(const std::vector<RunRecord>& rows, const std::filesystem::path& dir,
                                          const Scenario& scenario, std::size_t count, std::uint64_t seed) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].success) candidates.push_back(i);
    }
    Rng rng(seed);
    for (std::size_t i = candidates.size(); i > 1; --i) {
        std::swap(candidates[i - 1], candidates[rng.uniform_index(i)]);
    }
    candidates.resize(std::min(count, candidates.size()));

    std::vector<std::string> problems;
    for (std::size_t i : candidates) {
        const auto& r = rows[i];
        const auto file = dir / path_file_name(r);
        std::ifstream in(file);
        if (!in) {
            problems.push_back(file.string() + ": missing");
            continue;
        }
        const auto parsed = read_path_file(in);
        if (parsed.meta.cost != r.cost) {
            problems.push_back(file.string() + ": cost " + fmt(parsed.meta.cost) + " differs from row " + fmt(r.cost));
        }
        for (const auto& v : validate_tamp_path(parsed.path, scenario, 0.0)) {
            problems.push_back(file.string() + ": " + v.kind + ": " + v.detail);
        }
    }
    return problems;
}

BoundsReport run_bounds(const BoundsConfig& cfg) {
    if (cfg.d < 1 || cfg.d > static_cast<int>(Point::kMaxDim)) throw UsageError("bounds: d out of range");
    if (cfg.n < 1 || cfg.trials < 1) throw UsageError("bounds: n and trials must be >= 1");
    const bool cone = cfg.region == BoundsConfig::Region::cone;
    if (cone && cfg.d != 2) throw UsageError("bounds: cone regions are 2D only");
    if (cone && !(cfg.phi > 0.0 && cfg.phi <= 0.5)) throw UsageError("bounds: phi must lie in (0, 0.5]");

    BoundsReport rep;
    rep.config = cfg;
    const double r = cfg.radius > 0.0 ? cfg.radius : prm_star_radius(cfg.n, cfg.d, 1.0);
    rep.config.radius = r;
    rep.region_radius = cone ? r : 0.5 * r;
    if (rep.region_radius > 0.5) throw UsageError("bounds: region does not fit inside the unit cube");

    const auto d = static_cast<std::size_t>(cfg.d);
    Point center(d);
    for (std::size_t i = 0; i < d; ++i) center = center.with(i, 0.5);
    std::optional<Cone> c;
    if (cone) c.emplace(center, Point{1.0, 0.0}, r, cfg.phi * std::numbers::pi);

    const double mu1 = unit_ball_volume(cfg.d);
    const double nd = static_cast<double>(cfg.n);
    rep.bound = cone ? std::exp(-cfg.phi * mu1 * nd * std::pow(r, cfg.d))
                     : std::exp(-(mu1 / std::pow(2.0, cfg.d)) * nd * std::pow(r, cfg.d));

    Rng rng(cfg.seed);
    std::array<double, Point::kMaxDim> x{};
    const double rr = rep.region_radius * rep.region_radius;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        bool hit = false;
        for (std::size_t k = 0; k < cfg.n; ++k) {
            for (std::size_t i = 0; i < d; ++i) x[i] = rng.uniform01();
            if (hit) continue;
            if (cone) {
                hit = cone_contains(*c, Point(std::span<const double>(x.data(), d)));
            } else {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += (x[i] - 0.5) * (x[i] - 0.5);
                hit = s <= rr;
            }
        }
        if (!hit) ++rep.empty_trials;
    }
    rep.empirical = static_cast<double>(rep.empty_trials) / static_cast<double>(cfg.trials);
    rep.std_error = std::sqrt(rep.bound * (1.0 - rep.bound) / static_cast<double>(cfg.trials));
    rep.pass = rep.empirical <= rep.bound + 3.0 * rep.std_error;
    return rep;
}

std::string format_bounds_report(const BoundsReport& r) {
    std::ostringstream os;
    const bool cone = r.config.region == BoundsConfig::Region::cone;
    os << "region=" << (cone ? "cone" : "ball") << " d=" << r.config.d << " n=" << r.config.n
       << " trials=" << r.config.trials;
    if (cone) os << " phi=" << fmt(r.config.phi);
    os << " r_n=" << fmt(r.config.radius) << " region_radius=" << fmt(r.region_radius)
       << " empty=" << r.empty_trials << " empirical=" << fmt(r.empirical) << " bound=" << fmt(r.bound)
       << " std_error=" << fmt(r.std_error) << ' ' << (r.pass ? "PASS" : "FAIL");
    return os.str();
}

}  // namespace tamp
