#pragma once

#include <vector>

#include "hunter/core/state.hpp"

namespace hunter {

// Loads promised to hosts earlier in the same scheduling pass, so sequential
// placements see each other before the state machine applies them.
struct PendingLoads {
    std::vector<double> ips, ram_mb, disk_mb;

    explicit PendingLoads(std::size_t n_hosts)
        : ips(n_hosts, 0.0), ram_mb(n_hosts, 0.0), disk_mb(n_hosts, 0.0) {}

    void add(HostId host, const Task& task) {
        ips[host] += task.current_demand().cpu_ips;
        ram_mb[host] += task.ram_reservation_mb;
        disk_mb[host] += task.disk_reservation_mb;
    }
};

// True iff placing the task keeps the host's CPU load at or under cpu_cap and
// its RAM/disk footprints within capacity (inclusive bounds).
inline bool feasible(const Task& task, const Host& host, const DatacenterState& state,
                     const PendingLoads& pending, double cpu_cap) {
    if (task.state == TaskState::Allocated && task.host == host.id) return true;
    const HostUsage& u = state.usage[host.id];
    const ResourceDemand& d = task.current_demand();
    const double load =
        (u.ips_demand + pending.ips[host.id] + d.cpu_ips) / host.cpu_capacity_ips;
    if (load > cpu_cap) return false;
    if (u.ram_reserved_mb + pending.ram_mb[host.id] + task.ram_reservation_mb >
        host.ram_capacity_mb)
        return false;
    if (u.disk_reserved_mb + pending.disk_mb[host.id] + task.disk_reservation_mb >
        host.disk_capacity_mb)
        return false;
    return true;
}

inline bool feasible(const Task& task, const Host& host, const DatacenterState& state,
                     double cpu_cap) {
    return feasible(task, host, state, PendingLoads(state.hosts.size()), cpu_cap);
}

} // namespace hunter
