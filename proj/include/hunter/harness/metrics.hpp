#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hunter {

// Per-interval QoS record. aec/at are the normalized energy and temperature
// terms consumed by the scheduling objective; scheduling_time_s is wall clock
// and is reported separately from the deterministic columns.
struct IntervalMetrics {
    std::uint32_t interval = 0;
    double energy_j = 0.0;
    double mean_temperature_c = 0.0;
    double max_temperature_c = 0.0;
    std::vector<double> host_cpu_utilization;
    std::vector<double> host_ram_utilization;
    double aec = 0.0;  // energy / (sum of max host powers * interval length), clamped
    double at = 0.0;   // mean normalized host temperature, clamped
    double slav = 0.0; // violated leaving jobs / leaving jobs, 0 if none left
    std::size_t completed_jobs = 0;
    std::size_t violated_jobs = 0;
    double cost = 0.0;
    double fairness = 1.0;
    double response_time_s = 0.0; // summed over jobs leaving this interval
    double wait_time_s = 0.0;     // waiting task-seconds accrued this interval
    double migration_time_s = 0.0;
    std::size_t migration_count = 0;
    double scheduling_time_s = 0.0;
};

// Jain's index (sum x)^2 / (n * sum x^2); 1 for empty or all-zero input.
inline double jain_fairness(const std::vector<double>& values) {
    if (values.empty()) return 1.0;
    double sum = 0.0, sq = 0.0;
    for (double v : values) {
        sum += v;
        sq += v * v;
    }
    if (sq == 0.0) return 1.0;
    return sum * sum / (static_cast<double>(values.size()) * sq);
}

// Population std over mean.
inline double coefficient_of_variation(const std::vector<double>& series) {
    if (series.empty()) throw std::invalid_argument("CoV of empty series");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    if (mean == 0.0) throw std::invalid_argument("CoV undefined for zero mean");
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(series.size());
    return std::sqrt(var) / mean;
}

} // namespace hunter
