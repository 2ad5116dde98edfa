#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hunter/core/rng.hpp"
#include "hunter/core/types.hpp"
#include "hunter/workload/trace.hpp"

namespace hunter {

struct WorkloadConfig {
    double lambda = 1.2;      // Poisson arrival rate per interval
    std::size_t min_tasks_per_job = 3;
    std::size_t max_tasks_per_job = 5;
    // deadline = sla_base_s + sla_factor * nominal runtime
    double sla_base_s = 300.0;
    double sla_factor = 1.5;
    double container_min_mb = 3000.0;
    double container_max_mb = 6000.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
        if (min_tasks_per_job < 3 || max_tasks_per_job > 5 ||
            min_tasks_per_job > max_tasks_per_job)
            throw std::invalid_argument("tasks per job must stay within [3,5]");
        if (sla_base_s < 0.0 || sla_factor < 0.0)
            throw std::invalid_argument("SLA model parameters must be non-negative");
        if (container_min_mb <= 0.0 || container_max_mb < container_min_mb)
            throw std::invalid_argument("bad container size range");
    }
};

// Splits one parent demand row into k task rows. Every field is divided
// evenly with the division remainder folded into the first task, so the
// per-interval sum over tasks reproduces the parent row to round-off.
inline std::vector<ResourceDemand> split_demand(const ResourceDemand& parent,
                                                std::size_t k) {
    const double kd = static_cast<double>(k);
    ResourceDemand share;
    share.cpu_ips = parent.cpu_ips / kd;
    share.ram_mb = parent.ram_mb / kd;
    share.ram_read = parent.ram_read / kd;
    share.ram_write = parent.ram_write / kd;
    share.disk_mb = parent.disk_mb / kd;
    share.disk_read = parent.disk_read / kd;
    share.disk_write = parent.disk_write / kd;
    share.net_mbps = parent.net_mbps / kd;

    std::vector<ResourceDemand> parts(k, share);
    auto remainder = [kd](double total, double part) {
        return total - (kd - 1.0) * part;
    };
    parts[0].cpu_ips = remainder(parent.cpu_ips, share.cpu_ips);
    parts[0].ram_mb = remainder(parent.ram_mb, share.ram_mb);
    parts[0].ram_read = remainder(parent.ram_read, share.ram_read);
    parts[0].ram_write = remainder(parent.ram_write, share.ram_write);
    parts[0].disk_mb = remainder(parent.disk_mb, share.disk_mb);
    parts[0].disk_read = remainder(parent.disk_read, share.disk_read);
    parts[0].disk_write = remainder(parent.disk_write, share.disk_write);
    parts[0].net_mbps = remainder(parent.net_mbps, share.net_mbps);
    return parts;
}

// Draws Poisson(lambda) new jobs for interval t. Each job samples one trace
// uniformly from the pool and splits it across 3-5 tasks. Ids continue from
// the provided counters so replays are reproducible.
inline NewJobBatch generate_arrivals(const WorkloadConfig& config,
                                     const std::vector<TraceRecord>& pool,
                                     std::uint32_t interval, double interval_seconds,
                                     JobId& next_job_id, TaskId& next_task_id) {
    config.validate();
    if (pool.empty()) throw std::invalid_argument("trace pool is empty");

    Rng rng(mix_seed(config.seed, interval));
    const int n_jobs = rng.poisson(config.lambda);

    NewJobBatch batch;
    for (int j = 0; j < n_jobs; ++j) {
        const auto& trace =
            pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
        const auto k = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(config.min_tasks_per_job),
                            static_cast<std::int64_t>(config.max_tasks_per_job)));

        Job job;
        job.id = next_job_id++;
        job.arrival_interval = interval;
        const double nominal_runtime_s =
            static_cast<double>(trace.rows.size()) * interval_seconds;
        job.sla_deadline_s = config.sla_base_s + config.sla_factor * nominal_runtime_s;

        std::vector<Task> tasks(k);
        for (std::size_t i = 0; i < k; ++i) {
            tasks[i].id = next_task_id++;
            tasks[i].job_id = job.id;
            tasks[i].created_at = interval;
            tasks[i].sla_deadline_s = job.sla_deadline_s;
            tasks[i].container_size_mb =
                rng.uniform(config.container_min_mb, config.container_max_mb);
            tasks[i].demand_trace.reserve(trace.rows.size());
            job.task_ids.push_back(tasks[i].id);
        }
        for (const auto& row : trace.rows) {
            const auto parts = split_demand(row, k);
            for (std::size_t i = 0; i < k; ++i) tasks[i].demand_trace.push_back(parts[i]);
        }
        batch.jobs.push_back(std::move(job));
        for (auto& task : tasks) batch.tasks.push_back(std::move(task));
    }
    return batch;
}

} // namespace hunter
