#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hunter/core/rng.hpp"
#include "hunter/core/types.hpp"

namespace hunter {

// A utilization time series for one job, one row per interval.
struct TraceRecord {
    std::string name;
    std::string category;
    std::vector<ResourceDemand> rows;
};

inline constexpr const char* kTraceHeader =
    "cpu_ips,ram_mb,ram_read,ram_write,disk_mb,disk_read,disk_write,net_mbps";

inline TraceRecord parse_trace_csv(std::istream& in, const std::string& name) {
    TraceRecord trace;
    trace.name = name;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(name + ": empty trace file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader)
        throw std::runtime_error(name + ": bad header, expected '" + kTraceHeader + "'");
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[8];
        std::string cell;
        for (int i = 0; i < 8; ++i) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(name + ": row " + std::to_string(row_no) +
                                         " has fewer than 8 fields");
            try {
                v[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw std::runtime_error(name + ": row " + std::to_string(row_no) +
                                         " has a non-numeric field");
            }
            if (v[i] < 0.0)
                throw std::runtime_error(name + ": row " + std::to_string(row_no) +
                                         " has a negative value");
        }
        trace.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    if (trace.rows.empty()) throw std::runtime_error(name + ": trace has no rows");
    return trace;
}

// Loads every *.csv under `dir` as one trace. The trace's category is the
// leading token of the file name up to the first '_' (e.g. rnd_001.csv).
inline std::vector<TraceRecord> load_traces(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("trace directory does not exist: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<TraceRecord> pool;
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open trace: " + path.string());
        TraceRecord trace = parse_trace_csv(in, path.filename().string());
        const auto stem = path.stem().string();
        trace.category = stem.substr(0, stem.find('_'));
        pool.push_back(std::move(trace));
    }
    if (pool.empty()) throw std::runtime_error("no traces found in " + dir);
    return pool;
}

// Synthetic fallback used when no trace directory is configured: sinusoidal
// demand with noise around a per-category mean. RAM and disk footprints are
// held flat over a trace (container-style residency); the rate fields vary.
struct SyntheticTraceConfig {
    std::string category = "rnd";
    std::size_t count = 20;
    std::size_t min_length = 4;
    std::size_t max_length = 12;
    double ips_mean = 4000.0;
    double ips_amplitude = 1600.0;
    double ips_noise = 400.0;
    double ram_mean_mb = 2000.0;
    double ram_spread_mb = 800.0;
    double disk_mean_mb = 8000.0;
    double rate_mean_mbps = 60.0;
    double net_mean_mbps = 20.0;
    double period_intervals = 6.0;
};

inline std::vector<TraceRecord> generate_synthetic_traces(
    const std::vector<SyntheticTraceConfig>& configs, std::uint64_t seed) {
    std::vector<TraceRecord> pool;
    std::size_t trace_index = 0;
    for (const auto& cfg : configs) {
        if (cfg.count == 0 || cfg.min_length < 1 || cfg.max_length < cfg.min_length)
            throw std::invalid_argument("bad synthetic trace config");
        for (std::size_t i = 0; i < cfg.count; ++i, ++trace_index) {
            Rng rng(mix_seed(seed, trace_index));
            TraceRecord trace;
            trace.category = cfg.category;
            trace.name = cfg.category + "_" + std::to_string(i);
            const auto len = static_cast<std::size_t>(rng.uniform_int(
                static_cast<std::int64_t>(cfg.min_length),
                static_cast<std::int64_t>(cfg.max_length)));
            const double phase = rng.uniform(0.0, 6.283185307179586);
            const double ram = std::max(64.0, cfg.ram_mean_mb +
                                                  rng.uniform(-cfg.ram_spread_mb,
                                                              cfg.ram_spread_mb));
            const double disk = std::max(128.0, cfg.disk_mean_mb * rng.uniform(0.5, 1.5));
            for (std::size_t row = 0; row < len; ++row) {
                const double wave =
                    std::sin(6.283185307179586 * static_cast<double>(row) /
                                 cfg.period_intervals +
                             phase);
                ResourceDemand d;
                d.cpu_ips = std::max(
                    0.0, cfg.ips_mean + cfg.ips_amplitude * wave +
                             rng.normal(0.0, cfg.ips_noise));
                d.ram_mb = ram;
                d.disk_mb = disk;
                d.ram_read = std::max(0.0, cfg.rate_mean_mbps * rng.uniform(0.5, 1.5));
                d.ram_write = std::max(0.0, cfg.rate_mean_mbps * rng.uniform(0.25, 1.0));
                d.disk_read = std::max(0.0, cfg.rate_mean_mbps * rng.uniform(0.25, 1.25));
                d.disk_write = std::max(0.0, cfg.rate_mean_mbps * rng.uniform(0.1, 0.75));
                d.net_mbps = std::max(0.0, cfg.net_mean_mbps * rng.uniform(0.25, 1.75));
                trace.rows.push_back(d);
            }
            pool.push_back(std::move(trace));
        }
    }
    return pool;
}

} // namespace hunter
