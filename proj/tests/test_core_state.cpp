#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "hunter/core/rng.hpp"
#include "hunter/core/state.hpp"

using namespace hunter;
using namespace hunter::testing;

TEST_CASE("migration cost formula, zero size, and interval cap") {
    Host a = make_host(0, 4000, 8192, 65536, 100.0);
    Host b = make_host(1, 4000, 8192, 65536, 150.0);
    b.network_latency_s = 0.0;
    Task t = make_task(1, 1, 3, 500.0);
    t.container_size_mb = 3000.0;
    CHECK(migration_cost(t, a, b, 300.0) == Catch::Approx(30.0));

    t.container_size_mb = 0.0;
    b.network_latency_s = 0.05;
    CHECK(migration_cost(t, a, b, 300.0) == Catch::Approx(0.05));

    t.container_size_mb = 60000.0;
    b.network_latency_s = 0.0;
    CHECK(migration_cost(t, a, b, 300.0) == Catch::Approx(300.0));

    CHECK_THROWS_AS(migration_cost(t, a, a, 300.0), std::logic_error);
}

TEST_CASE("no-op interval: only the clock advances and energy is the idle floor") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0), make_host(1)}, params);

    auto [next, metrics] = step_interval(state, {}, {}, params);
    CHECK(next.interval_index == 1);
    CHECK(next.tasks.empty());
    // Per test host: 2 cores x 10 W idle (capacitance zero) plus 10 W of
    // constant component draw.
    const double idle_power_per_host = 2 * 10.0 + 3.0 + 1.0 + 2.0 + 1.0 + 1.0 + 2.0;
    CHECK(metrics.energy_j == Catch::Approx(2 * idle_power_per_host * 300.0));
    CHECK(metrics.completed_jobs == 0);
    CHECK(metrics.slav == 0.0);
    CHECK(metrics.cost == 0.0);
}

TEST_CASE("single task lifecycle: allocate, run one interval, job completes") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0)}, params);
    // Jobs need 3 tasks minimum; give each a one-interval trace.
    admit_jobs(state, make_batch(1, {1, 2, 3}, 1, 400.0));
    state.created_task_count = 3;

    SchedulingDecision d;
    d.assignments = {{1, 0}, {2, 0}, {3, 0}};
    auto [next, metrics] = step_interval(state, d, {}, params);
    for (TaskId id : {1, 2, 3}) {
        CHECK(next.task(id).state == TaskState::Completed);
        CHECK(next.task(id).completed_at == 0);
    }
    CHECK(next.jobs.at(1).completed_at == 0);
    CHECK(metrics.completed_jobs == 1);
    CHECK(metrics.slav == 0.0); // deadline is huge
    CHECK(metrics.response_time_s == Catch::Approx(300.0));
}

TEST_CASE("scripted 3-host 5-task scenario matches hand-aggregated demands") {
    const SimParams params = make_params();
    DatacenterState state =
        initial_state({make_host(0), make_host(1), make_host(2)}, params);

    NewJobBatch batch;
    Job j1;
    j1.id = 1;
    j1.task_ids = {1, 2, 3};
    j1.sla_deadline_s = 1e9;
    Job j2;
    j2.id = 2;
    j2.task_ids = {4, 5, 6};
    j2.sla_deadline_s = 1e9;
    batch.jobs = {j1, j2};
    const double ips[] = {300, 500, 700, 1100, 1300, 0};
    const double ram[] = {100, 200, 300, 400, 500, 1};
    for (TaskId id = 1; id <= 6; ++id)
        batch.tasks.push_back(
            make_task(id, id <= 3 ? 1 : 2, 4, ips[id - 1], ram[id - 1]));
    admit_jobs(state, batch);

    // Hosts: 0 <- {t1, t4}, 1 <- {t2, t5}, 2 <- {t3}; t6 stays waiting.
    SchedulingDecision d;
    d.assignments = {{1, 0}, {4, 0}, {2, 1}, {5, 1}, {3, 2}};
    auto [next, metrics] = step_interval(state, d, {}, params);

    CHECK(next.usage[0].ips_demand == Catch::Approx(300.0 + 1100.0));
    CHECK(next.usage[1].ips_demand == Catch::Approx(500.0 + 1300.0));
    CHECK(next.usage[2].ips_demand == Catch::Approx(700.0));
    CHECK(next.usage[0].ram_mb == Catch::Approx(100.0 + 400.0));
    CHECK(next.usage[1].ram_mb == Catch::Approx(200.0 + 500.0));
    CHECK(next.usage[2].ram_mb == Catch::Approx(300.0));
    CHECK(metrics.host_cpu_utilization[0] == Catch::Approx(1400.0 / 4000.0));
    CHECK(metrics.host_cpu_utilization[1] == Catch::Approx(1800.0 / 4000.0));
    CHECK(metrics.host_cpu_utilization[2] == Catch::Approx(700.0 / 4000.0));
    CHECK(metrics.wait_time_s == Catch::Approx(300.0)); // t6 waited one interval
    CHECK(next.wait_queue() == std::vector<TaskId>{6});
}

TEST_CASE("CPU oversubscription stretches every resident task equally") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0, 4000.0)}, params);
    admit_jobs(state, make_batch(1, {1, 2, 3}, 2, 2500.0)); // 7500 demand on 4000 IPS
    SchedulingDecision d;
    d.assignments = {{1, 0}, {2, 0}, {3, 0}};
    auto [s1, m1] = step_interval(state, d, {}, params);
    const double scale = 4000.0 / 7500.0;
    for (TaskId id : {1, 2, 3}) {
        CHECK(s1.task(id).progress == Catch::Approx(scale));
        CHECK(s1.task(id).state == TaskState::Allocated);
    }
    CHECK(m1.host_cpu_utilization[0] == Catch::Approx(1.0));
    // Remaining work finishes after ceil(2 / scale) = 4 intervals total.
    DatacenterState s = std::move(s1);
    int steps = 1;
    while (s.count_states().completed < 3 && steps < 10) {
        auto [sn, mn] = step_interval(s, {}, {}, params);
        s = std::move(sn);
        ++steps;
    }
    CHECK(steps == 4);
}

TEST_CASE("migration: stall during transfer, resources land next interval") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0), make_host(1)}, params);
    admit_jobs(state, make_batch(1, {1, 2, 3}, 3, 400.0));

    SchedulingDecision place;
    place.assignments = {{1, 0}, {2, 0}, {3, 0}};
    auto [s1, m1] = step_interval(state, place, {}, params);
    CHECK(m1.migration_count == 0);

    SchedulingDecision migrate;
    migrate.assignments = {{1, 1}};
    auto [s2, m2] = step_interval(s1, migrate, {}, params);
    CHECK(m2.migration_count == 1);
    CHECK(m2.migration_time_s == Catch::Approx(30.0)); // 3000 MB / 100 MB/s
    CHECK(s2.task(1).state == TaskState::Allocated);
    CHECK(s2.task(1).host == 1);
    CHECK(s2.task(1).progress == Catch::Approx(1.0)); // stalled while migrating
    CHECK(s2.task(2).progress == Catch::Approx(2.0));
    // Transfer loaded both endpoints' links during the migration interval.
    CHECK(s2.usage[0].net_mbps == Catch::Approx(10.0 + 2 * 5.0)); // t2,t3 + transfer
    CHECK(s2.usage[1].net_mbps == Catch::Approx(10.0));

    auto [s3, m3] = step_interval(s2, {}, {}, params);
    CHECK(s3.usage[1].ips_demand == Catch::Approx(400.0));
    CHECK(s3.task(1).progress == Catch::Approx(2.0));
}

TEST_CASE("structural decision errors abort the interval") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0)}, params);
    admit_jobs(state, make_batch(1, {1, 2, 3}, 2, 100.0));

    SchedulingDecision unknown_task;
    unknown_task.assignments = {{99, 0}};
    CHECK_THROWS_AS(step_interval(state, unknown_task, {}, params), std::logic_error);

    SchedulingDecision unknown_host;
    unknown_host.assignments = {{1, 7}};
    CHECK_THROWS_AS(step_interval(state, unknown_host, {}, params), std::logic_error);
}

TEST_CASE("RAM capacity violations are rejected as scheduler bugs") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0, 4000.0, 1000.0)}, params);
    admit_jobs(state, make_batch(1, {1, 2, 3}, 2, 100.0, 600.0)); // 1800 MB > 1000 MB
    SchedulingDecision d;
    d.assignments = {{1, 0}, {2, 0}, {3, 0}};
    CHECK_THROWS_AS(step_interval(state, d, {}, params), std::logic_error);
}

TEST_CASE("conservation and capacity hold over random feasible runs") {
    const SimParams params = make_params();
    Rng rng(20240803);
    for (int trial = 0; trial < 40; ++trial) {
        DatacenterState state =
            initial_state({make_host(0), make_host(1), make_host(2)}, params);
        TaskId next_task = 1;
        JobId next_job = 1;
        for (int t = 0; t < 25; ++t) {
            // Random placement of waiting tasks onto hosts with room.
            SchedulingDecision d;
            std::vector<double> pending_ram(3, 0.0), pending_ips(3, 0.0);
            for (TaskId id : state.wait_queue()) {
                const Task& task = state.task(id);
                const HostId h = static_cast<HostId>(rng.uniform_int(0, 2));
                const auto& u = state.usage[h];
                if (u.ram_reserved_mb + pending_ram[h] + task.ram_reservation_mb <=
                    state.hosts[h].ram_capacity_mb) {
                    d.assignments[id] = h;
                    pending_ram[h] += task.ram_reservation_mb;
                    pending_ips[h] += task.current_demand().cpu_ips;
                }
            }
            NewJobBatch batch;
            if (rng.uniform() < 0.7) {
                const std::size_t k = static_cast<std::size_t>(rng.uniform_int(3, 5));
                std::vector<TaskId> ids;
                for (std::size_t i = 0; i < k; ++i) ids.push_back(next_task++);
                batch = make_batch(next_job++, ids,
                                   static_cast<std::size_t>(rng.uniform_int(1, 4)),
                                   rng.uniform(100.0, 1200.0), rng.uniform(64.0, 900.0));
            }
            auto [next, metrics] = step_interval(state, d, batch, params);
            state = std::move(next);

            const auto counts = state.count_states();
            CHECK(counts.total() == state.created_task_count);
            for (std::size_t h = 0; h < 3; ++h) {
                CHECK(state.usage[h].ram_reserved_mb <=
                      state.hosts[h].ram_capacity_mb);
                CHECK(state.usage[h].disk_reserved_mb <=
                      state.hosts[h].disk_capacity_mb);
            }
        }
    }
}

TEST_CASE("waiting tasks keep arrival order in the queue") {
    const SimParams params = make_params();
    DatacenterState state = initial_state({make_host(0)}, params);
    admit_jobs(state, make_batch(1, {5, 2, 9}, 2, 100.0));
    CHECK(state.wait_queue() == std::vector<TaskId>{2, 5, 9});
}

TEST_CASE("identical inputs give identical stepped metrics") {
    const SimParams params = make_params();
    auto run = [&]() {
        DatacenterState state = initial_state({make_host(0), make_host(1)}, params);
        admit_jobs(state, make_batch(1, {1, 2, 3}, 3, 700.0));
        SchedulingDecision d;
        d.assignments = {{1, 0}, {2, 1}, {3, 0}};
        std::vector<double> series;
        for (int t = 0; t < 5; ++t) {
            auto [next, m] = step_interval(state, t == 0 ? d : SchedulingDecision{}, {},
                                           params);
            state = std::move(next);
            series.push_back(m.energy_j);
            series.push_back(m.mean_temperature_c);
            series.push_back(m.aec);
        }
        return series;
    };
    CHECK(run() == run());
}
