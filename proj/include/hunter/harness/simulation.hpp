#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/harness/config.hpp"
#include "hunter/scheduler/baselines.hpp"
#include "hunter/scheduler/hunter.hpp"
#include "hunter/surrogate/evaluator.hpp"
#include "hunter/surrogate/graph.hpp"
#include "hunter/surrogate/training.hpp"
#include "hunter/workload/arrivals.hpp"

namespace hunter {

struct ReplicationResult {
    std::vector<IntervalMetrics> intervals;
    std::vector<QosRecord> qos;
    std::size_t surrogate_fallbacks = 0;
};

struct ReplicationSetup {
    const std::vector<Host>* fleet = nullptr;
    const std::vector<TraceRecord>* traces = nullptr;
    SimParams sim;
    SchedulerConfig scheduler_config;
    WorkloadConfig workload;
    SchedulerKind kind = SchedulerKind::Random;
    std::size_t intervals = 100;
    std::uint64_t seed = 1;
    GgcnModel* model = nullptr; // required for the hunter scheduler
    bool fine_tune = true;
    double fine_tune_lr = 1e-4;
    std::vector<Datapoint>* capture = nullptr; // optional dataset sink
};

// One replication of the control loop: schedule, advance the state machine by
// one interval, score the objective, then (for hunter) fine-tune the surrogate
// on the newest datapoint.
inline ReplicationResult run_replication(const ReplicationSetup& setup) {
    const std::vector<Host>& fleet = *setup.fleet;
    DatacenterState state = initial_state(fleet, setup.sim);
    const FeatureScales scales = FeatureScales::from_fleet(fleet, setup.sim);

    WorkloadConfig workload = setup.workload;
    workload.seed = setup.seed;
    JobId next_job_id = 1;
    TaskId next_task_id = 1;
    NewJobBatch batch = generate_arrivals(workload, *setup.traces, 0,
                                          setup.sim.interval_seconds, next_job_id,
                                          next_task_id);
    admit_jobs(state, batch);

    Rng random_rng(mix_seed(setup.seed, 0x5EED));
    std::optional<GgcnEvaluator> evaluator;
    std::optional<AdamW> optimizer;
    ForwardCache tune_cache;
    if (setup.kind == SchedulerKind::Hunter) {
        if (setup.model == nullptr)
            throw std::invalid_argument("hunter scheduler requires a surrogate model");
        evaluator.emplace(*setup.model, scales, setup.sim.interval_seconds);
        optimizer.emplace(setup.model->config, setup.fine_tune_lr, 0.01);
    }

    ReplicationResult result;
    result.intervals.reserve(setup.intervals);
    for (std::size_t t = 0; t < setup.intervals; ++t) {
        const auto t0 = std::chrono::steady_clock::now();
        SchedulingDecision decision;
        switch (setup.kind) {
            case SchedulerKind::Random:
                decision = baseline_random(state, setup.scheduler_config.cpu_cap, random_rng);
                break;
            case SchedulerKind::BestFit:
                decision = baseline_bestfit(state, setup.scheduler_config.cpu_cap);
                break;
            case SchedulerKind::Hunter: {
                auto [d, diag] = hunter_schedule(*evaluator, state, setup.scheduler_config,
                                                 setup.sim.interval_seconds);
                decision = std::move(d);
                if (diag.surrogate_fallback) ++result.surrogate_fallbacks;
                break;
            }
        }
        const double wall_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        NewJobBatch next_batch =
            generate_arrivals(workload, *setup.traces, static_cast<std::uint32_t>(t + 1),
                              setup.sim.interval_seconds, next_job_id, next_task_id);
        auto [next_state, metrics] = step_interval(state, decision, next_batch, setup.sim);
        metrics.scheduling_time_s = wall_s;
        state = std::move(next_state);

        const QosRecord qos = compute_objective(metrics, setup.scheduler_config);
        result.intervals.push_back(metrics);
        result.qos.push_back(qos);

        // The monitored graph at the start of interval t+1 reflects the
        // allocation that just ran, labeled with the objective it achieved.
        if (setup.capture != nullptr || (setup.kind == SchedulerKind::Hunter &&
                                         setup.fine_tune && setup.model != nullptr)) {
            Datapoint dp;
            dp.graph = build_graph(state, scales, setup.sim.interval_seconds);
            dp.thermal = build_thermal_input(state, scales,
                                             setup.model != nullptr
                                                 ? setup.model->config.thermal_features - 1
                                                 : 11);
            dp.objective = qos.objective;
            if (setup.kind == SchedulerKind::Hunter && setup.fine_tune &&
                setup.model != nullptr)
                fine_tune(*setup.model, *optimizer, dp, tune_cache);
            if (setup.capture != nullptr) setup.capture->push_back(std::move(dp));
        }
    }
    return result;
}

} // namespace hunter
