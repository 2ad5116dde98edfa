#pragma once

#include <limits>
#include <vector>

#include "hunter/core/rng.hpp"
#include "hunter/core/state.hpp"
#include "hunter/scheduler/feasibility.hpp"

namespace hunter {

// Places every unallocated task on a uniformly random feasible host; tasks
// with no feasible host stay queued. Running tasks are left alone.
inline SchedulingDecision baseline_random(const DatacenterState& state, double cpu_cap,
                                          Rng& rng) {
    SchedulingDecision decision;
    PendingLoads pending(state.hosts.size());
    for (const auto& [id, task] : state.tasks) {
        if (task.state != TaskState::Waiting) continue;
        std::vector<HostId> options;
        for (const Host& host : state.hosts)
            if (feasible(task, host, state, pending, cpu_cap)) options.push_back(host.id);
        if (options.empty()) continue;
        const HostId pick = options[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
        decision.assignments[id] = pick;
        pending.add(pick, task);
    }
    return decision;
}

// Classic best-fit: the feasible host with the least CPU headroom left after
// placement; ties break to the lowest host id.
inline SchedulingDecision baseline_bestfit(const DatacenterState& state, double cpu_cap) {
    SchedulingDecision decision;
    PendingLoads pending(state.hosts.size());
    for (const auto& [id, task] : state.tasks) {
        if (task.state != TaskState::Waiting) continue;
        HostId best = kNoHost;
        double best_headroom = std::numeric_limits<double>::infinity();
        for (const Host& host : state.hosts) {
            if (!feasible(task, host, state, pending, cpu_cap)) continue;
            const double post_ips = state.usage[host.id].ips_demand +
                                    pending.ips[host.id] +
                                    task.current_demand().cpu_ips;
            const double headroom = cpu_cap * host.cpu_capacity_ips - post_ips;
            if (headroom < best_headroom) {
                best_headroom = headroom;
                best = host.id;
            }
        }
        if (best == kNoHost) continue;
        decision.assignments[id] = best;
        pending.add(best, state.task(id));
    }
    return decision;
}

} // namespace hunter
