#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "hunter/harness/metrics.hpp"

namespace hunter {

// K = floor(B * I_S / S_C): the number of container migrations the fabric can
// absorb within one interval, clamped to at least 1.
inline std::size_t compute_k(double bandwidth_mbps, double interval_seconds,
                             double min_container_mb) {
    if (bandwidth_mbps <= 0.0 || interval_seconds <= 0.0 || min_container_mb <= 0.0)
        throw std::invalid_argument("compute_k needs positive inputs");
    const double k = std::floor(bandwidth_mbps * interval_seconds / min_container_mb);
    return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

struct SchedulerConfig {
    std::size_t k = 0;                // 0 selects the K formula
    double bandwidth_mbps = 100.0;    // B, router bandwidth
    double min_container_mb = 3000.0; // S_C
    double alpha = 1.0 / 3.0;         // AEC weight
    double beta = 1.0 / 3.0;          // AT weight
    double gamma_w = 1.0 / 3.0;       // SLAV weight (distinct from any learning rate)
    double cpu_cap = 0.8;

    void validate() const {
        if (alpha < 0.0 || beta < 0.0 || gamma_w < 0.0 ||
            std::abs(alpha + beta + gamma_w - 1.0) > 1e-9)
            throw std::invalid_argument("objective weights must be convex");
        if (cpu_cap <= 0.0 || cpu_cap > 1.0)
            throw std::invalid_argument("cpu cap must lie in (0,1]");
    }

    std::size_t effective_k(double interval_seconds) const {
        if (k > 0) return k;
        return compute_k(bandwidth_mbps, interval_seconds, min_container_mb);
    }
};

struct QosRecord {
    double aec = 0.0;
    double at = 0.0;
    double slav = 0.0;
    double objective = 1.0; // O = 1 - (alpha*AEC + beta*AT + gamma*SLAV)
};

inline QosRecord compute_objective(const IntervalMetrics& metrics,
                                   const SchedulerConfig& config) {
    config.validate();
    QosRecord q;
    q.aec = metrics.aec;
    q.at = metrics.at;
    q.slav = metrics.slav;
    q.objective =
        1.0 - (config.alpha * q.aec + config.beta * q.at + config.gamma_w * q.slav);
    return q;
}

} // namespace hunter
