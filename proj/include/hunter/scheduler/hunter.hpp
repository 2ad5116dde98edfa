#pragma once

#include <cstddef>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/scheduler/baselines.hpp"
#include "hunter/scheduler/config.hpp"
#include "hunter/scheduler/feasibility.hpp"
#include "hunter/scheduler/selection.hpp"
#include "hunter/surrogate/evaluator.hpp"

namespace hunter {

struct HunterDiagnostics {
    std::size_t k = 0;
    std::size_t candidate_tasks = 0;
    std::size_t candidate_hosts = 0;
    std::size_t surrogate_evaluations = 0;
    std::size_t placements = 0;
    std::size_t migrations = 0;
    std::size_t waitlisted = 0;
    bool surrogate_fallback = false;
};

// One pass of the surrogate-guided scheduler: take the top-K tasks by host
// power draw and the bottom-K hosts by performance-to-power ratio, then give
// each task to the host whose hypothetical allocation scores highest. The
// argmax host is used only if feasible; otherwise the task waits (no second
// best). Committed placements update the evaluator's graph so later tasks in
// the same pass see them.
//
// Evaluator requirements: begin(state), score(task, host) -> double,
// commit(task, host).
template <class Evaluator>
std::pair<SchedulingDecision, HunterDiagnostics> hunter_schedule(
    Evaluator& evaluator, const DatacenterState& state, const SchedulerConfig& config,
    double interval_seconds) {
    config.validate();
    SchedulingDecision decision;
    HunterDiagnostics diag;
    diag.k = config.effective_k(interval_seconds);

    const std::vector<TaskId> tasks = select_top_k_tasks(state, diag.k);
    const std::vector<HostId> hosts = select_bottom_k_hosts(state, diag.k, config.cpu_cap);
    diag.candidate_tasks = tasks.size();
    diag.candidate_hosts = hosts.size();

    try {
        evaluator.begin(state);
        PendingLoads pending(state.hosts.size());
        for (TaskId task_id : tasks) {
            const Task& task = state.task(task_id);
            if (hosts.empty()) {
                if (task.state == TaskState::Waiting) ++diag.waitlisted;
                continue;
            }
            HostId best_host = kNoHost;
            double best_score = 0.0;
            for (HostId host_id : hosts) {
                const double s = evaluator.score(task_id, host_id);
                ++diag.surrogate_evaluations;
                if (best_host == kNoHost || s > best_score ||
                    (s == best_score && host_id < best_host)) {
                    best_score = s;
                    best_host = host_id;
                }
            }
            if (task.state == TaskState::Allocated && task.host == best_host)
                continue; // already where the surrogate wants it
            if (feasible(task, state.hosts[best_host], state, pending, config.cpu_cap)) {
                decision.assignments[task_id] = best_host;
                pending.add(best_host, task);
                evaluator.commit(task_id, best_host);
                ++diag.placements;
                if (task.state == TaskState::Allocated) ++diag.migrations;
            } else if (task.state == TaskState::Waiting) {
                ++diag.waitlisted;
            }
        }
    } catch (const SurrogateError&) {
        diag.surrogate_fallback = true;
        return {baseline_bestfit(state, config.cpu_cap), diag};
    }
    return {decision, diag};
}

} // namespace hunter
