#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hunter/core/types.hpp"
#include "hunter/harness/metrics.hpp"
#include "hunter/sustainability/thermal.hpp"

namespace hunter {

struct SimParams {
    double interval_seconds = 300.0;
    ThermalParams thermal;
    CoolingParams cooling;
    double max_safe_temperature_c = 120.0;
    // Aggregate disk rate at which storage read/write activity saturates.
    double storage_rate_reference_mbps = 500.0;

    void validate() const {
        if (interval_seconds <= 0.0)
            throw std::invalid_argument("interval length must be positive");
        if (max_safe_temperature_c <= thermal.ambient_c)
            throw std::invalid_argument("max safe temperature must exceed ambient");
        thermal.validate();
        cooling.validate();
    }
};

// Measured per-host aggregates for the most recently executed interval plus
// current footprint reservations.
struct HostUsage {
    double ips_demand = 0.0;    // sum of task demands, may exceed capacity
    double executed_load = 0.0; // min(1, ips_demand / capacity)
    double ram_mb = 0.0;
    double disk_mb = 0.0;
    double net_mbps = 0.0;
    double ram_read = 0.0;
    double ram_write = 0.0;
    double disk_read = 0.0;
    double disk_write = 0.0;
    double ram_reserved_mb = 0.0;
    double disk_reserved_mb = 0.0;
    std::size_t task_count = 0;
    bool migration_endpoint = false;
};

class DatacenterState {
public:
    std::vector<Host> hosts;
    std::map<TaskId, Task> tasks;
    std::map<JobId, Job> jobs;
    std::vector<HostUsage> usage;
    std::uint32_t interval_index = 0;
    std::uint64_t created_task_count = 0;

    const Host& host(HostId id) const {
        if (id >= hosts.size()) throw std::logic_error("unknown host id");
        return hosts[id];
    }

    const Task& task(TaskId id) const {
        auto it = tasks.find(id);
        if (it == tasks.end()) throw std::logic_error("unknown task id");
        return it->second;
    }

    Task& task(TaskId id) {
        auto it = tasks.find(id);
        if (it == tasks.end()) throw std::logic_error("unknown task id");
        return it->second;
    }

    // Waiting tasks in arrival (id) order; ids are assigned monotonically so
    // this is the FIFO wait queue.
    std::vector<TaskId> wait_queue() const {
        std::vector<TaskId> out;
        for (const auto& [id, t] : tasks)
            if (t.state == TaskState::Waiting) out.push_back(id);
        return out;
    }

    // Tasks the scheduler may (re)place: waiting or running, not mid-migration.
    std::vector<TaskId> schedulable_tasks() const {
        std::vector<TaskId> out;
        for (const auto& [id, t] : tasks)
            if (t.state == TaskState::Waiting || t.state == TaskState::Allocated)
                out.push_back(id);
        return out;
    }

    struct StateCounts {
        std::size_t waiting = 0, allocated = 0, migrating = 0, completed = 0;
        std::size_t total() const { return waiting + allocated + migrating + completed; }
    };

    StateCounts count_states() const {
        StateCounts c;
        for (const auto& [id, t] : tasks) {
            switch (t.state) {
                case TaskState::Waiting: ++c.waiting; break;
                case TaskState::Allocated: ++c.allocated; break;
                case TaskState::Migrating: ++c.migrating; break;
                case TaskState::Completed: ++c.completed; break;
            }
        }
        return c;
    }
};

struct EnergyBreakdown {
    double computing_j = 0.0;
    double cooling_j = 0.0;
    double dc_heat_w = 0.0; // summed dynamic processor power
    double total_j() const { return computing_j + cooling_j; }
};

// Computing energy per host (processor + storage + memory + network + extra)
// plus the cooling plant, driven by the executed loads of one interval.
inline EnergyBreakdown datacenter_energy(const std::vector<Host>& hosts,
                                         const std::vector<HostUsage>& usage,
                                         const SimParams& params, double dt_s) {
    EnergyBreakdown e;
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        const Host& host = hosts[h];
        const double load = usage[h].executed_load;
        const std::vector<double> core_utils(host.cores, load);
        e.computing_j += processor_energy(host.energy, core_utils, dt_s);
        ComponentActivity activity;
        activity.storage_read =
            std::min(1.0, usage[h].disk_read / params.storage_rate_reference_mbps);
        activity.storage_write =
            std::min(1.0, usage[h].disk_write / params.storage_rate_reference_mbps);
        e.computing_j += component_energy(host.energy, activity, dt_s);
        e.dc_heat_w += static_cast<double>(host.cores) *
                       host.energy.dynamic_core_power(load);
    }
    e.cooling_j = cooling_energy(params.cooling, e.dc_heat_w, dt_s);
    return e;
}

inline double total_energy(const DatacenterState& state, const SimParams& params,
                           double dt_s) {
    return datacenter_energy(state.hosts, state.usage, params, dt_s).total_j();
}

inline double migration_cost(const Task& task, const Host& src, const Host& dst,
                             double interval_seconds) {
    if (src.id == dst.id) throw std::logic_error("migration requires distinct hosts");
    const double bw = std::min(src.bandwidth_capacity_mbps, dst.bandwidth_capacity_mbps);
    const double seconds = task.container_size_mb / bw + dst.network_latency_s;
    return std::min(seconds, interval_seconds);
}

inline DatacenterState initial_state(std::vector<Host> hosts, const SimParams& params) {
    params.validate();
    DatacenterState state;
    for (std::size_t i = 0; i < hosts.size(); ++i) {
        hosts[i].id = static_cast<HostId>(i);
        if (hosts[i].temperature_c == 0.0) hosts[i].temperature_c = params.thermal.ambient_c;
        hosts[i].validate(params.thermal.ambient_c);
    }
    state.hosts = std::move(hosts);
    state.usage.assign(state.hosts.size(), HostUsage{});
    return state;
}

inline void admit_jobs(DatacenterState& state, const NewJobBatch& batch) {
    for (const auto& job : batch.jobs) {
        if (job.task_ids.size() < 3 || job.task_ids.size() > 5)
            throw std::invalid_argument("jobs must have 3 to 5 tasks");
        if (!state.jobs.emplace(job.id, job).second)
            throw std::logic_error("duplicate job id");
    }
    for (auto task : batch.tasks) {
        task.seal_trace();
        task.state = TaskState::Waiting;
        task.host = kNoHost;
        if (state.jobs.find(task.job_id) == state.jobs.end())
            throw std::logic_error("task references unknown job");
        if (!state.tasks.emplace(task.id, task).second)
            throw std::logic_error("duplicate task id");
        ++state.created_task_count;
    }
}

// Advances the datacenter by one interval: applies the decision, executes all
// allocated tasks (CPU oversubscription slows them proportionally), retires
// finished tasks and jobs, updates temperatures, and accounts energy and QoS.
inline std::pair<DatacenterState, IntervalMetrics> step_interval(
    const DatacenterState& state, const SchedulingDecision& decision,
    const NewJobBatch& arrivals, const SimParams& params) {
    DatacenterState next = state;
    IntervalMetrics m;
    const double dt = params.interval_seconds;
    const std::uint32_t t = next.interval_index;
    m.interval = t;

    // Decision application. Structural problems are bugs in the caller, not
    // recoverable input errors.
    for (const auto& [task_id, host_id] : decision.assignments) {
        Task& task = next.task(task_id);
        if (host_id >= next.hosts.size()) throw std::logic_error("decision names unknown host");
        switch (task.state) {
            case TaskState::Waiting:
                task.state = TaskState::Allocated;
                task.host = host_id;
                break;
            case TaskState::Allocated:
                if (task.host != host_id) {
                    const double cost = migration_cost(task, next.host(task.host),
                                                       next.host(host_id), dt);
                    task.migration_src = task.host;
                    task.host = host_id;
                    task.state = TaskState::Migrating;
                    m.migration_time_s += cost;
                    ++m.migration_count;
                }
                break;
            case TaskState::Migrating:
                throw std::logic_error("decision touches a task that is mid-migration");
            case TaskState::Completed:
                throw std::logic_error("decision touches a completed task");
        }
    }

    // Execution aggregates for this interval.
    const std::size_t n_hosts = next.hosts.size();
    std::vector<HostUsage> usage(n_hosts);
    for (const auto& [id, task] : next.tasks) {
        if (task.state == TaskState::Allocated) {
            const ResourceDemand& d = task.current_demand();
            HostUsage& u = usage[task.host];
            u.ips_demand += d.cpu_ips;
            u.ram_mb += d.ram_mb;
            u.disk_mb += d.disk_mb;
            u.net_mbps += d.net_mbps;
            u.ram_read += d.ram_read;
            u.ram_write += d.ram_write;
            u.disk_read += d.disk_read;
            u.disk_write += d.disk_write;
            u.ram_reserved_mb += task.ram_reservation_mb;
            u.disk_reserved_mb += task.disk_reservation_mb;
            ++u.task_count;
        } else if (task.state == TaskState::Migrating) {
            // Checkpoint transfer loads both endpoints' links; the container
            // occupies both footprints until the restore completes.
            const double transfer_rate = task.container_size_mb / dt;
            for (HostId h : {task.migration_src, task.host}) {
                HostUsage& u = usage[h];
                u.net_mbps += transfer_rate;
                u.ram_reserved_mb += task.ram_reservation_mb;
                u.disk_reserved_mb += task.disk_reservation_mb;
                u.migration_endpoint = true;
            }
        }
    }

    for (std::size_t h = 0; h < n_hosts; ++h) {
        const Host& host = next.hosts[h];
        if (usage[h].ram_reserved_mb > host.ram_capacity_mb ||
            usage[h].disk_reserved_mb > host.disk_capacity_mb)
            throw std::logic_error("decision violates RAM/disk capacity");
        usage[h].executed_load =
            std::min(1.0, usage[h].ips_demand / host.cpu_capacity_ips);
    }

    // Progress. Oversubscribed hosts stretch every resident task equally.
    for (auto& [id, task] : next.tasks) {
        if (task.state != TaskState::Allocated) continue;
        const HostUsage& u = usage[task.host];
        const double cap = next.hosts[task.host].cpu_capacity_ips;
        const double scale = u.ips_demand <= cap ? 1.0 : cap / u.ips_demand;
        task.progress += scale;
    }

    // Retire finished tasks, then jobs whose last task left.
    std::vector<JobId> leaving;
    for (auto& [id, task] : next.tasks) {
        if (task.state == TaskState::Allocated && task.finished()) {
            task.state = TaskState::Completed;
            task.completed_at = t;
            task.host = kNoHost;
            task.demand_trace.clear();
            task.demand_trace.shrink_to_fit();
            Job& job = next.jobs.at(task.job_id);
            bool all_done = true;
            for (TaskId tid : job.task_ids)
                if (!(next.task(tid).state == TaskState::Completed)) all_done = false;
            if (all_done && job.completed_at == kNotCompleted) {
                job.completed_at = t;
                leaving.push_back(job.id);
            }
        }
    }
    m.completed_jobs = leaving.size();
    for (JobId jid : leaving) {
        const Job& job = next.jobs.at(jid);
        const double response_s =
            (static_cast<double>(t) + 1.0 - static_cast<double>(job.arrival_interval)) * dt;
        m.response_time_s += response_s;
        if (response_s > job.sla_deadline_s) ++m.violated_jobs;
    }
    m.slav = leaving.empty()
                 ? 0.0
                 : static_cast<double>(m.violated_jobs) / static_cast<double>(leaving.size());

    // Migrations land: resources shift to the destination from the next
    // interval onward.
    for (auto& [id, task] : next.tasks) {
        if (task.state == TaskState::Migrating) {
            task.state = TaskState::Allocated;
            task.migration_src = kNoHost;
        }
    }

    // Refresh footprint reservations now that finished tasks have vacated and
    // migrations have landed; the scheduler's feasibility checks at t+1 must
    // see exact current commitments, not the mid-interval ones.
    for (std::size_t h = 0; h < n_hosts; ++h) {
        usage[h].ram_reserved_mb = 0.0;
        usage[h].disk_reserved_mb = 0.0;
    }
    for (const auto& [id, task] : next.tasks) {
        if (task.state == TaskState::Allocated) {
            usage[task.host].ram_reserved_mb += task.ram_reservation_mb;
            usage[task.host].disk_reserved_mb += task.disk_reservation_mb;
        }
    }

    // Thermal and energy accounting from the executed loads.
    const EnergyBreakdown energy = datacenter_energy(next.hosts, usage, params, dt);
    const double heat_fraction = params.cooling.heat_reference_w > 0.0
                                     ? energy.dc_heat_w / params.cooling.heat_reference_w
                                     : 0.0;
    const double inlet_c = params.thermal.crac_inlet_c(heat_fraction);

    double temp_sum = 0.0;
    double max_power_w = 0.0;
    std::vector<double> cpu_loads(n_hosts), ram_utils(n_hosts);
    m.max_temperature_c = 0.0;
    for (std::size_t h = 0; h < n_hosts; ++h) {
        Host& host = next.hosts[h];
        const double load = usage[h].executed_load;
        const double p_dyn =
            static_cast<double>(host.cores) * host.energy.dynamic_core_power(load);
        host.temperature_c =
            host_temperature(params.thermal, p_dyn, inlet_c, params.thermal.ambient_c);
        temp_sum += host.temperature_c;
        m.max_temperature_c = std::max(m.max_temperature_c, host.temperature_c);
        max_power_w += host.max_power_w();

        cpu_loads[h] = load;
        ram_utils[h] = usage[h].ram_mb / host.ram_capacity_mb;
        if (usage[h].task_count > 0 || usage[h].migration_endpoint)
            m.cost += host.price_per_hour * dt / 3600.0;
    }

    m.energy_j = energy.total_j();
    m.mean_temperature_c = n_hosts == 0 ? 0.0 : temp_sum / static_cast<double>(n_hosts);
    m.host_cpu_utilization = cpu_loads;
    m.host_ram_utilization = ram_utils;
    m.fairness = jain_fairness(cpu_loads);
    m.aec = max_power_w > 0.0 ? std::clamp(m.energy_j / (max_power_w * dt), 0.0, 1.0)
                              : 0.0;
    const double temp_span = params.max_safe_temperature_c - params.thermal.ambient_c;
    double at_sum = 0.0;
    for (std::size_t h = 0; h < n_hosts; ++h)
        at_sum += std::clamp((next.hosts[h].temperature_c - params.thermal.ambient_c) / temp_span,
                             0.0, 1.0);
    m.at = n_hosts == 0 ? 0.0 : at_sum / static_cast<double>(n_hosts);

    for (const auto& [id, task] : next.tasks)
        if (task.state == TaskState::Waiting) m.wait_time_s += dt;

    next.usage = std::move(usage);
    next.interval_index = t + 1;
    // Arrivals join as the next interval's new jobs.
    NewJobBatch stamped = arrivals;
    for (auto& job : stamped.jobs) job.arrival_interval = t + 1;
    for (auto& task : stamped.tasks) task.created_at = t + 1;
    admit_jobs(next, stamped);
    return {std::move(next), std::move(m)};
}

} // namespace hunter
