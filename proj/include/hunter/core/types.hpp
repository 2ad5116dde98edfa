#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hunter/sustainability/energy.hpp"
#include "hunter/sustainability/power_profile.hpp"

namespace hunter {

using HostId = std::uint32_t;
using TaskId = std::uint64_t;
using JobId = std::uint64_t;

inline constexpr HostId kNoHost = std::numeric_limits<HostId>::max();
inline constexpr std::uint32_t kNotCompleted = std::numeric_limits<std::uint32_t>::max();

// One interval of resource demand. ram/disk are resident footprints (MB),
// the read/write fields and net are rates (MB/s).
struct ResourceDemand {
    double cpu_ips = 0.0;
    double ram_mb = 0.0;
    double ram_read = 0.0;
    double ram_write = 0.0;
    double disk_mb = 0.0;
    double disk_read = 0.0;
    double disk_write = 0.0;
    double net_mbps = 0.0;

    void validate() const {
        const double v[] = {cpu_ips, ram_mb,  ram_read,  ram_write,
                            disk_mb, disk_read, disk_write, net_mbps};
        for (double x : v)
            if (x < 0.0 || !(x == x))
                throw std::invalid_argument("demand fields must be non-negative");
    }
};

struct Host {
    HostId id = 0;
    std::string host_class;
    std::size_t cores = 1;
    double cpu_capacity_ips = 0.0;
    double ram_capacity_mb = 0.0;
    double disk_capacity_mb = 0.0;
    double bandwidth_capacity_mbps = 0.0;
    PowerProfile power_profile;
    EnergyParams energy;
    double price_per_hour = 0.0;
    bool is_private = true;
    double network_latency_s = 0.0;
    double temperature_c = 0.0; // updated every interval

    void validate(double ambient_c) const {
        if (cores == 0) throw std::invalid_argument("host needs at least one core");
        if (cpu_capacity_ips <= 0.0 || ram_capacity_mb <= 0.0 || disk_capacity_mb <= 0.0 ||
            bandwidth_capacity_mbps <= 0.0)
            throw std::invalid_argument("host capacities must be strictly positive");
        if (network_latency_s < 0.0)
            throw std::invalid_argument("latency must be non-negative");
        if (temperature_c < ambient_c)
            throw std::invalid_argument("host temperature below ambient");
        power_profile.validate();
        energy.validate();
    }

    double max_power_w() const { return power_profile.max_watts(); }
};

enum class TaskState { Waiting, Allocated, Migrating, Completed };

struct Task {
    TaskId id = 0;
    JobId job_id = 0;
    std::vector<ResourceDemand> demand_trace;
    double container_size_mb = 0.0;
    double sla_deadline_s = 0.0;
    TaskState state = TaskState::Waiting;
    HostId host = kNoHost;          // Allocated: current host; Migrating: destination
    HostId migration_src = kNoHost; // Migrating only
    std::uint32_t created_at = 0;
    std::uint32_t completed_at = kNotCompleted;

    // Progress in trace rows; fractional under CPU oversubscription. The task
    // completes once progress reaches the trace length.
    double progress = 0.0;

    // Footprint reservations used for hard capacity checks; maxima over the
    // trace so admission can never be violated later by trace dynamics.
    double ram_reservation_mb = 0.0;
    double disk_reservation_mb = 0.0;

    std::size_t trace_length() const { return demand_trace.size(); }

    bool finished() const {
        return progress >= static_cast<double>(demand_trace.size());
    }

    const ResourceDemand& current_demand() const {
        std::size_t idx = static_cast<std::size_t>(progress);
        if (idx >= demand_trace.size()) idx = demand_trace.size() - 1;
        return demand_trace[idx];
    }

    void seal_trace() {
        if (demand_trace.empty())
            throw std::invalid_argument("task trace must have at least one row");
        ram_reservation_mb = 0.0;
        disk_reservation_mb = 0.0;
        for (const auto& row : demand_trace) {
            row.validate();
            if (row.ram_mb > ram_reservation_mb) ram_reservation_mb = row.ram_mb;
            if (row.disk_mb > disk_reservation_mb) disk_reservation_mb = row.disk_mb;
        }
    }
};

struct Job {
    JobId id = 0;
    std::vector<TaskId> task_ids; // 3 to 5 members
    double sla_deadline_s = 0.0;
    std::uint32_t arrival_interval = 0;
    std::uint32_t completed_at = kNotCompleted;
};

// A (partial) mapping of tasks to hosts for one interval. Tasks absent from
// the map stay where they are; absent waiting tasks remain queued.
struct SchedulingDecision {
    std::map<TaskId, HostId> assignments;
};

struct NewJobBatch {
    std::vector<Job> jobs;
    std::vector<Task> tasks;
};

} // namespace hunter
