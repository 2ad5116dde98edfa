#pragma once

// Shared fixtures for the test suites: minimal hosts, tasks and jobs with
// hand-set capacities so expected values stay easy to derive on paper.

#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/core/types.hpp"

namespace hunter::testing {

inline Host make_host(HostId id, double ips = 4000.0, double ram_mb = 8192.0,
                      double disk_mb = 65536.0, double bw = 100.0,
                      std::size_t cores = 2) {
    Host h;
    h.id = id;
    h.host_class = "test";
    h.cores = cores;
    h.cpu_capacity_ips = ips;
    h.ram_capacity_mb = ram_mb;
    h.disk_capacity_mb = disk_mb;
    h.bandwidth_capacity_mbps = bw;
    h.power_profile = make_profile({50.0, 60.0, 71.0, 83.0, 96.0, 110.0, 125.0, 141.0,
                                    158.0, 177.0, 200.0});
    h.energy.capacitance_f = 0.0;
    h.energy.mu1 = 60.0;
    h.energy.mu2 = 15.0;
    h.energy.idle_core_power_w = 10.0;
    h.energy.storage_idle_w = 3.0;
    h.energy.memory_sram_w = 1.0;
    h.energy.memory_dram_w = 2.0;
    h.energy.network_router_w = 1.0;
    h.energy.network_lan_cards_w = 1.0;
    h.energy.motherboard_w = 2.0;
    h.price_per_hour = 0.1;
    h.network_latency_s = 0.0;
    return h;
}

inline SimParams make_params(double interval_s = 300.0) {
    SimParams p;
    p.interval_seconds = interval_s;
    p.thermal.ambient_c = 25.0;
    p.max_safe_temperature_c = 150.0;
    p.cooling.ac_w = 100.0;
    p.cooling.compressor_w = 50.0;
    p.cooling.fan_w = 25.0;
    p.cooling.pump_w = 25.0;
    p.cooling.heat_reference_w = 1000.0;
    return p;
}

// A task whose every trace row repeats the same demand.
inline Task make_task(TaskId id, JobId job, std::size_t rows, double ips,
                      double ram_mb = 256.0, double disk_mb = 512.0,
                      double net = 5.0) {
    Task t;
    t.id = id;
    t.job_id = job;
    t.container_size_mb = 3000.0;
    t.sla_deadline_s = 1e9;
    ResourceDemand d;
    d.cpu_ips = ips;
    d.ram_mb = ram_mb;
    d.disk_mb = disk_mb;
    d.ram_read = 1.0;
    d.ram_write = 1.0;
    d.disk_read = 2.0;
    d.disk_write = 1.0;
    d.net_mbps = net;
    t.demand_trace.assign(rows, d);
    return t;
}

// A job of `ids.size()` sibling tasks, each with the same flat demand.
inline NewJobBatch make_batch(JobId job, const std::vector<TaskId>& ids,
                              std::size_t rows, double ips_each,
                              double ram_mb = 256.0) {
    NewJobBatch b;
    Job j;
    j.id = job;
    j.task_ids = ids;
    j.sla_deadline_s = 1e9;
    b.jobs.push_back(j);
    for (TaskId id : ids) b.tasks.push_back(make_task(id, job, rows, ips_each, ram_mb));
    return b;
}

} // namespace hunter::testing
