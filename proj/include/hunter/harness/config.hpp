#pragma once

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hunter/core/state.hpp"
#include "hunter/harness/fleet.hpp"
#include "hunter/scheduler/config.hpp"
#include "hunter/surrogate/training.hpp"
#include "hunter/workload/arrivals.hpp"
#include "hunter/workload/trace.hpp"

namespace hunter {

enum class SchedulerKind { Hunter, Random, BestFit };

inline SchedulerKind scheduler_from_name(const std::string& name) {
    if (name == "hunter") return SchedulerKind::Hunter;
    if (name == "random") return SchedulerKind::Random;
    if (name == "bestfit") return SchedulerKind::BestFit;
    throw std::invalid_argument("unknown scheduler '" + name +
                                "' (expected hunter, random or bestfit)");
}

inline const char* scheduler_name(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::Hunter: return "hunter";
        case SchedulerKind::Random: return "random";
        case SchedulerKind::BestFit: return "bestfit";
    }
    return "?";
}

struct SurrogateSettings {
    std::string weights_path;          // empty: pretrain in-process when needed
    bool fine_tune = true;
    std::size_t pretrain_intervals = 1000;
    PretrainOptions pretrain;
};

struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::size_t intervals = 100;
    std::size_t replications = 5;
    std::string output_dir = "results";
    SchedulerKind scheduler = SchedulerKind::Hunter;
    SchedulerConfig scheduler_config;
    SimParams sim;
    std::size_t fleet_scale = 1;
    WorkloadConfig workload;
    std::string traces_dir; // empty: synthetic pool
    std::vector<SyntheticTraceConfig> synthetic;
    SurrogateSettings surrogate;

    void validate() const {
        if (intervals < 1) throw std::invalid_argument("intervals must be >= 1");
        if (replications < 1) throw std::invalid_argument("replications must be >= 1");
        scheduler_config.validate();
        sim.validate();
        workload.validate();
    }
};

namespace detail {

template <class T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.synthetic = {SyntheticTraceConfig{}, []() {
                         SyntheticTraceConfig fast;
                         fast.category = "fastStorage";
                         fast.rate_mean_mbps = 180.0;
                         fast.disk_mean_mb = 16000.0;
                         return fast;
                     }()};

    detail::read_key(j, "seed", cfg.seed);
    detail::read_key(j, "intervals", cfg.intervals);
    detail::read_key(j, "replications", cfg.replications);
    detail::read_key(j, "output_dir", cfg.output_dir);
    if (j.contains("scheduler"))
        cfg.scheduler = scheduler_from_name(j.at("scheduler").get<std::string>());
    if (j.contains("scheduler_config")) {
        const auto& s = j.at("scheduler_config");
        detail::read_key(s, "k", cfg.scheduler_config.k);
        detail::read_key(s, "bandwidth_mbps", cfg.scheduler_config.bandwidth_mbps);
        detail::read_key(s, "min_container_mb", cfg.scheduler_config.min_container_mb);
        detail::read_key(s, "alpha", cfg.scheduler_config.alpha);
        detail::read_key(s, "beta", cfg.scheduler_config.beta);
        detail::read_key(s, "gamma", cfg.scheduler_config.gamma_w);
        detail::read_key(s, "cpu_cap", cfg.scheduler_config.cpu_cap);
    }
    if (j.contains("simulation")) {
        const auto& s = j.at("simulation");
        detail::read_key(s, "interval_seconds", cfg.sim.interval_seconds);
        detail::read_key(s, "ambient_c", cfg.sim.thermal.ambient_c);
        detail::read_key(s, "thermal_resistance", cfg.sim.thermal.resistance_k_per_w);
        detail::read_key(s, "thermal_capacity", cfg.sim.thermal.heat_capacity_j_per_k);
        detail::read_key(s, "crac_kappa_c", cfg.sim.thermal.crac_kappa_c);
        detail::read_key(s, "max_safe_temperature_c", cfg.sim.max_safe_temperature_c);
        detail::read_key(s, "storage_rate_reference_mbps",
                         cfg.sim.storage_rate_reference_mbps);
    }
    detail::read_key(j, "fleet_scale", cfg.fleet_scale);
    if (j.contains("workload")) {
        const auto& w = j.at("workload");
        detail::read_key(w, "lambda", cfg.workload.lambda);
        detail::read_key(w, "min_tasks_per_job", cfg.workload.min_tasks_per_job);
        detail::read_key(w, "max_tasks_per_job", cfg.workload.max_tasks_per_job);
        detail::read_key(w, "sla_base_s", cfg.workload.sla_base_s);
        detail::read_key(w, "sla_factor", cfg.workload.sla_factor);
        detail::read_key(w, "container_min_mb", cfg.workload.container_min_mb);
        detail::read_key(w, "container_max_mb", cfg.workload.container_max_mb);
        detail::read_key(w, "traces_dir", cfg.traces_dir);
        if (w.contains("synthetic")) {
            cfg.synthetic.clear();
            for (const auto& sj : w.at("synthetic")) {
                SyntheticTraceConfig s;
                detail::read_key(sj, "category", s.category);
                detail::read_key(sj, "count", s.count);
                detail::read_key(sj, "min_length", s.min_length);
                detail::read_key(sj, "max_length", s.max_length);
                detail::read_key(sj, "ips_mean", s.ips_mean);
                detail::read_key(sj, "ips_amplitude", s.ips_amplitude);
                detail::read_key(sj, "ips_noise", s.ips_noise);
                detail::read_key(sj, "ram_mean_mb", s.ram_mean_mb);
                detail::read_key(sj, "ram_spread_mb", s.ram_spread_mb);
                detail::read_key(sj, "disk_mean_mb", s.disk_mean_mb);
                detail::read_key(sj, "rate_mean_mbps", s.rate_mean_mbps);
                detail::read_key(sj, "net_mean_mbps", s.net_mean_mbps);
                detail::read_key(sj, "period_intervals", s.period_intervals);
                cfg.synthetic.push_back(s);
            }
        }
    }
    if (j.contains("surrogate")) {
        const auto& s = j.at("surrogate");
        detail::read_key(s, "weights_path", cfg.surrogate.weights_path);
        detail::read_key(s, "fine_tune", cfg.surrogate.fine_tune);
        detail::read_key(s, "pretrain_intervals", cfg.surrogate.pretrain_intervals);
        detail::read_key(s, "learning_rate", cfg.surrogate.pretrain.learning_rate);
        detail::read_key(s, "weight_decay", cfg.surrogate.pretrain.weight_decay);
        detail::read_key(s, "patience", cfg.surrogate.pretrain.patience);
        detail::read_key(s, "max_epochs", cfg.surrogate.pretrain.max_epochs);
        detail::read_key(s, "batch_size", cfg.surrogate.pretrain.batch_size);
        detail::read_key(s, "validation_fraction",
                         cfg.surrogate.pretrain.validation_fraction);
    }

    if (const char* env_out = std::getenv("HUNTERSIM_OUT")) cfg.output_dir = env_out;
    cfg.workload.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

inline std::vector<TraceRecord> build_trace_pool(const ExperimentConfig& cfg) {
    if (!cfg.traces_dir.empty()) return load_traces(cfg.traces_dir);
    return generate_synthetic_traces(cfg.synthetic, mix_seed(cfg.seed, 0x7A0E));
}

} // namespace hunter
