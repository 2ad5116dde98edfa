#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hunter/harness/config.hpp"
#include "hunter/harness/simulation.hpp"

namespace hunter {

// Shortest exact decimal form: values survive the CSV round trip bit for bit,
// which is what lets aggregates be recomputed from the files exactly.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kIntervalsHeader =
    "replication,interval,energy_j,mean_temperature_c,max_temperature_c,"
    "mean_cpu_utilization,max_cpu_utilization,mean_ram_utilization,aec,at,slav,"
    "objective,completed_jobs,violated_jobs,cost,fairness,response_time_s,"
    "wait_time_s,migration_time_s,migration_count";

inline constexpr const char* kTimingsHeader = "replication,interval,scheduling_time_s";

struct IntervalRow {
    std::size_t replication = 0;
    std::uint32_t interval = 0;
    double energy_j = 0, mean_temperature_c = 0, max_temperature_c = 0;
    double mean_cpu_utilization = 0, max_cpu_utilization = 0, mean_ram_utilization = 0;
    double aec = 0, at = 0, slav = 0, objective = 0;
    double completed_jobs = 0, violated_jobs = 0;
    double cost = 0, fairness = 0, response_time_s = 0, wait_time_s = 0;
    double migration_time_s = 0, migration_count = 0;
};

inline IntervalRow make_row(std::size_t replication, const IntervalMetrics& m,
                            const QosRecord& q) {
    IntervalRow r;
    r.replication = replication;
    r.interval = m.interval;
    r.energy_j = m.energy_j;
    r.mean_temperature_c = m.mean_temperature_c;
    r.max_temperature_c = m.max_temperature_c;
    double mean_cpu = 0, max_cpu = 0, mean_ram = 0;
    for (double v : m.host_cpu_utilization) {
        mean_cpu += v;
        if (v > max_cpu) max_cpu = v;
    }
    for (double v : m.host_ram_utilization) mean_ram += v;
    const double n = m.host_cpu_utilization.empty()
                         ? 1.0
                         : static_cast<double>(m.host_cpu_utilization.size());
    r.mean_cpu_utilization = mean_cpu / n;
    r.max_cpu_utilization = max_cpu;
    r.mean_ram_utilization = mean_ram / n;
    r.aec = q.aec;
    r.at = q.at;
    r.slav = q.slav;
    r.objective = q.objective;
    r.completed_jobs = static_cast<double>(m.completed_jobs);
    r.violated_jobs = static_cast<double>(m.violated_jobs);
    r.cost = m.cost;
    r.fairness = m.fairness;
    r.response_time_s = m.response_time_s;
    r.wait_time_s = m.wait_time_s;
    r.migration_time_s = m.migration_time_s;
    r.migration_count = static_cast<double>(m.migration_count);
    return r;
}

inline const std::vector<std::string>& row_metric_names() {
    static const std::vector<std::string> names = {
        "energy_j",      "mean_temperature_c", "max_temperature_c",
        "mean_cpu_utilization", "max_cpu_utilization", "mean_ram_utilization",
        "aec",           "at",                 "slav",
        "objective",     "completed_jobs",     "violated_jobs",
        "cost",          "fairness",           "response_time_s",
        "wait_time_s",   "migration_time_s",   "migration_count"};
    return names;
}

inline std::vector<double> row_metric_values(const IntervalRow& r) {
    return {r.energy_j,
            r.mean_temperature_c,
            r.max_temperature_c,
            r.mean_cpu_utilization,
            r.max_cpu_utilization,
            r.mean_ram_utilization,
            r.aec,
            r.at,
            r.slav,
            r.objective,
            r.completed_jobs,
            r.violated_jobs,
            r.cost,
            r.fairness,
            r.response_time_s,
            r.wait_time_s,
            r.migration_time_s,
            r.migration_count};
}

inline void write_intervals_csv(const std::string& path,
                                const std::vector<IntervalRow>& rows) {
    std::ofstream out(path, std::ios::binary); // fixed newlines on every platform
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kIntervalsHeader << "\n";
    for (const auto& r : rows) {
        out << r.replication << ',' << r.interval;
        for (double v : row_metric_values(r)) out << ',' << format_double(v);
        out << "\n";
    }
}

inline std::vector<IntervalRow> load_intervals_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kIntervalsHeader)
        throw std::runtime_error("unexpected intervals schema in " + path);
    std::vector<IntervalRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 20)
            throw std::runtime_error("bad row width in " + path);
        IntervalRow r;
        r.replication = static_cast<std::size_t>(vals[0]);
        r.interval = static_cast<std::uint32_t>(vals[1]);
        r.energy_j = vals[2];
        r.mean_temperature_c = vals[3];
        r.max_temperature_c = vals[4];
        r.mean_cpu_utilization = vals[5];
        r.max_cpu_utilization = vals[6];
        r.mean_ram_utilization = vals[7];
        r.aec = vals[8];
        r.at = vals[9];
        r.slav = vals[10];
        r.objective = vals[11];
        r.completed_jobs = vals[12];
        r.violated_jobs = vals[13];
        r.cost = vals[14];
        r.fairness = vals[15];
        r.response_time_s = vals[16];
        r.wait_time_s = vals[17];
        r.migration_time_s = vals[18];
        r.migration_count = vals[19];
        rows.push_back(r);
    }
    return rows;
}

// Per-replication means (cost and counts are summed where that is the natural
// aggregate) in the row_metric_names order.
inline std::vector<double> aggregate_replication(const std::vector<IntervalRow>& rows) {
    std::vector<double> acc(row_metric_names().size(), 0.0);
    for (const auto& r : rows) {
        const auto vals = row_metric_values(r);
        for (std::size_t i = 0; i < vals.size(); ++i) acc[i] += vals[i];
    }
    static const std::vector<std::string>& names = row_metric_names();
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const std::string& n = names[i];
        const bool summed = n == "completed_jobs" || n == "violated_jobs" ||
                            n == "cost" || n == "migration_count" ||
                            n == "response_time_s" || n == "wait_time_s" ||
                            n == "migration_time_s";
        if (!summed && !rows.empty()) acc[i] /= static_cast<double>(rows.size());
    }
    return acc;
}

struct ExperimentSummary {
    std::vector<std::vector<double>> per_replication; // [rep][metric]
    std::vector<double> mean, stddev, cov;            // across replications
    std::size_t surrogate_fallbacks = 0;

    double metric_mean(const std::string& name) const {
        const auto& names = row_metric_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return mean[i];
        throw std::invalid_argument("unknown metric " + name);
    }
};

inline ExperimentSummary summarize(const std::vector<std::vector<IntervalRow>>& runs) {
    ExperimentSummary s;
    for (const auto& rows : runs) s.per_replication.push_back(aggregate_replication(rows));
    const std::size_t n_metrics = row_metric_names().size();
    const double n = static_cast<double>(s.per_replication.size());
    s.mean.assign(n_metrics, 0.0);
    s.stddev.assign(n_metrics, 0.0);
    s.cov.assign(n_metrics, 0.0);
    for (const auto& rep : s.per_replication)
        for (std::size_t i = 0; i < n_metrics; ++i) s.mean[i] += rep[i] / n;
    for (const auto& rep : s.per_replication)
        for (std::size_t i = 0; i < n_metrics; ++i)
            s.stddev[i] += (rep[i] - s.mean[i]) * (rep[i] - s.mean[i]) / n;
    for (std::size_t i = 0; i < n_metrics; ++i) {
        s.stddev[i] = std::sqrt(s.stddev[i]);
        s.cov[i] = s.mean[i] != 0.0 ? s.stddev[i] / s.mean[i] : 0.0;
    }
    return s;
}

inline void write_summary_csv(const std::string& path, const ExperimentSummary& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "replication";
    for (const auto& n : row_metric_names()) out << ',' << n;
    out << "\n";
    for (std::size_t r = 0; r < s.per_replication.size(); ++r) {
        out << r;
        for (double v : s.per_replication[r]) out << ',' << format_double(v);
        out << "\n";
    }
}

inline void write_aggregate_csv(const std::string& path, const ExperimentSummary& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "metric,mean,stddev,cov\n";
    const auto& names = row_metric_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        out << names[i] << ',' << format_double(s.mean[i]) << ','
            << format_double(s.stddev[i]) << ',' << format_double(s.cov[i]) << "\n";
}

inline void write_loss_curve_csv(const std::string& path, const PretrainResult& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "epoch,train_mse,validation_mse\n";
    out << "0," << format_double(r.initial_validation_mse) << ','
        << format_double(r.initial_validation_mse) << "\n";
    for (const auto& e : r.curve)
        out << e.epoch << ',' << format_double(e.train_mse) << ','
            << format_double(e.validation_mse) << "\n";
}

struct PretrainArtifacts {
    GgcnModel model;
    PretrainResult result;
    std::size_t dataset_size = 0;
};

// Builds the training dataset by running the random scheduler and fits the
// surrogate with early stopping.
inline PretrainArtifacts pretrain_surrogate(const ExperimentConfig& cfg,
                                            const std::vector<Host>& fleet,
                                            const std::vector<TraceRecord>& traces,
                                            std::ostream* log = nullptr) {
    std::vector<Datapoint> dataset;
    ReplicationSetup setup;
    setup.fleet = &fleet;
    setup.traces = &traces;
    setup.sim = cfg.sim;
    setup.scheduler_config = cfg.scheduler_config;
    setup.workload = cfg.workload;
    setup.kind = SchedulerKind::Random;
    setup.intervals = cfg.surrogate.pretrain_intervals;
    setup.seed = mix_seed(cfg.seed, 0xDA7A);
    setup.capture = &dataset;
    run_replication(setup);

    PretrainArtifacts art;
    art.dataset_size = dataset.size();
    art.model = make_model(GgcnConfig{}, mix_seed(cfg.seed, 0x0DE1));
    PretrainOptions opts = cfg.surrogate.pretrain;
    opts.shuffle_seed = mix_seed(cfg.seed, 0x51FF);
    art.result = pretrain(art.model, dataset, opts);
    if (log != nullptr)
        *log << "pretrain: " << dataset.size() << " datapoints, best validation mse "
             << art.result.best_validation_mse << " (from "
             << art.result.initial_validation_mse << ") at epoch "
             << art.result.best_epoch << "\n";
    return art;
}

struct ExperimentArtifacts {
    ExperimentSummary summary;
    std::vector<std::vector<IntervalRow>> runs;
    std::string output_dir;
};

// Full experiment: optional pretraining, `replications` independent runs,
// per-run CSVs plus summary/aggregate files.
inline ExperimentArtifacts run_experiment(const ExperimentConfig& cfg,
                                          std::ostream* log = nullptr) {
    namespace fs = std::filesystem;
    cfg.validate();
    const std::vector<Host> fleet = build_fleet(default_fleet_classes(cfg.fleet_scale));
    SimParams sim = cfg.sim;
    sim.cooling = default_cooling(fleet);
    const std::vector<TraceRecord> traces = build_trace_pool(cfg);

    fs::create_directories(cfg.output_dir);

    GgcnModel pretrained;
    bool have_model = false;
    if (cfg.scheduler == SchedulerKind::Hunter) {
        if (!cfg.surrogate.weights_path.empty() && fs::exists(cfg.surrogate.weights_path)) {
            pretrained = load_model(cfg.surrogate.weights_path);
            have_model = true;
            if (log != nullptr)
                *log << "loaded surrogate weights from " << cfg.surrogate.weights_path
                     << "\n";
        } else {
            ExperimentConfig pcfg = cfg;
            pcfg.sim = sim;
            auto art = pretrain_surrogate(pcfg, fleet, traces, log);
            pretrained = std::move(art.model);
            have_model = true;
            const std::string model_out =
                cfg.surrogate.weights_path.empty()
                    ? (fs::path(cfg.output_dir) / "surrogate.bin").string()
                    : cfg.surrogate.weights_path;
            save_model(pretrained, model_out);
            write_loss_curve_csv((fs::path(cfg.output_dir) / "loss_curve.csv").string(),
                                 art.result);
        }
    }

    ExperimentArtifacts out;
    out.output_dir = cfg.output_dir;
    for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        ReplicationSetup setup;
        setup.fleet = &fleet;
        setup.traces = &traces;
        setup.sim = sim;
        setup.scheduler_config = cfg.scheduler_config;
        setup.workload = cfg.workload;
        setup.kind = cfg.scheduler;
        setup.intervals = cfg.intervals;
        setup.seed = mix_seed(cfg.seed, 1000 + rep);
        setup.fine_tune = cfg.surrogate.fine_tune;
        setup.fine_tune_lr = cfg.surrogate.pretrain.learning_rate;
        GgcnModel rep_model;
        if (cfg.scheduler == SchedulerKind::Hunter) {
            rep_model = pretrained; // each replication owns its fine-tuned copy
            setup.model = &rep_model;
        }
        const ReplicationResult rr = run_replication(setup);
        out.summary.surrogate_fallbacks += rr.surrogate_fallbacks;

        std::vector<IntervalRow> rows;
        rows.reserve(rr.intervals.size());
        for (std::size_t i = 0; i < rr.intervals.size(); ++i)
            rows.push_back(make_row(rep, rr.intervals[i], rr.qos[i]));

        const fs::path run_dir = fs::path(cfg.output_dir) / ("run_" + std::to_string(rep));
        fs::create_directories(run_dir);
        write_intervals_csv((run_dir / "intervals.csv").string(), rows);
        {
            std::ofstream tf(run_dir / "timings.csv", std::ios::binary);
            tf << kTimingsHeader << "\n";
            for (std::size_t i = 0; i < rr.intervals.size(); ++i)
                tf << rep << ',' << rr.intervals[i].interval << ','
                   << format_double(rr.intervals[i].scheduling_time_s) << "\n";
        }
        // Aggregation uses the values as re-read from disk so that recomputing
        // from the CSVs reproduces the summary exactly.
        out.runs.push_back(load_intervals_csv((run_dir / "intervals.csv").string()));
        if (log != nullptr)
            *log << "replication " << rep << ": " << rows.size() << " intervals\n";
    }

    const std::size_t fallbacks = out.summary.surrogate_fallbacks;
    out.summary = summarize(out.runs);
    out.summary.surrogate_fallbacks = fallbacks;
    write_summary_csv((fs::path(cfg.output_dir) / "summary.csv").string(), out.summary);
    write_aggregate_csv((fs::path(cfg.output_dir) / "aggregate.csv").string(),
                        out.summary);
    (void)have_model;
    return out;
}

} // namespace hunter
