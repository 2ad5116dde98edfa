#pragma once

#include <algorithm>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/sustainability/power_profile.hpp"

namespace hunter {

// Top-K tasks by the power draw of their current host, most expensive first.
// Unplaced tasks outrank everything (maximal urgency); ties fall to host CPU
// utilization, then ascending task id. Task ids are assigned in arrival
// order, so the id tie-break preserves wait-queue FIFO among unplaced tasks.
inline std::vector<TaskId> select_top_k_tasks(const DatacenterState& state,
                                              std::size_t k) {
    struct Entry {
        TaskId id;
        bool unallocated;
        double host_power;
        double host_util;
    };
    std::vector<Entry> entries;
    for (const auto& [id, task] : state.tasks) {
        if (task.state == TaskState::Waiting) {
            entries.push_back({id, true, 0.0, 0.0});
        } else if (task.state == TaskState::Allocated) {
            const Host& host = state.hosts[task.host];
            const double load = state.usage[task.host].executed_load;
            entries.push_back({id, false, power_at_load(host.power_profile, load), load});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.unallocated != b.unallocated) return a.unallocated;
        if (a.unallocated) return a.id < b.id;
        if (a.host_power != b.host_power) return a.host_power > b.host_power;
        if (a.host_util != b.host_util) return a.host_util > b.host_util;
        return a.id < b.id;
    });
    if (entries.size() > k) entries.resize(k);
    std::vector<TaskId> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.id);
    return out;
}

// Bottom-K hosts by performance-to-power ratio at their current load; hosts
// at or above the CPU cap are not valid migration targets and are dropped.
inline std::vector<HostId> select_bottom_k_hosts(const DatacenterState& state,
                                                 std::size_t k, double cpu_cap) {
    struct Entry {
        HostId id;
        double ratio;
    };
    std::vector<Entry> entries;
    for (const Host& host : state.hosts) {
        const double load = state.usage[host.id].executed_load;
        if (load >= cpu_cap) continue;
        entries.push_back(
            {host.id, performance_to_power(host.power_profile, host.cpu_capacity_ips, load)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.ratio != b.ratio) return a.ratio < b.ratio;
        return a.id < b.id;
    });
    if (entries.size() > k) entries.resize(k);
    std::vector<HostId> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.id);
    return out;
}

} // namespace hunter
