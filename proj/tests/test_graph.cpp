#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "hunter/surrogate/graph.hpp"

using namespace hunter;
using namespace hunter::testing;

namespace {

// Builds a state directly (bypassing job-size validation) so edge semantics
// can be probed with tiny jobs.
DatacenterState tiny_state(const std::vector<std::vector<TaskId>>& jobs,
                           std::size_t n_hosts) {
    const SimParams params = make_params();
    std::vector<Host> hosts;
    for (std::size_t i = 0; i < n_hosts; ++i)
        hosts.push_back(make_host(static_cast<HostId>(i)));
    DatacenterState state = initial_state(hosts, params);
    JobId jid = 1;
    for (const auto& members : jobs) {
        Job j;
        j.id = jid;
        j.task_ids = members;
        j.sla_deadline_s = 3600.0;
        state.jobs.emplace(j.id, j);
        for (TaskId t : members) {
            Task task = make_task(t, jid, 3, 400.0);
            task.seal_trace();
            state.tasks.emplace(t, task);
            ++state.created_task_count;
        }
        ++jid;
    }
    return state;
}

std::set<std::pair<std::size_t, std::size_t>> edges_of(const HeteroGraph& g,
                                                       EdgeType type) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < g.n_nodes(); ++i)
        for (const auto& nb : g.adj[i])
            if (nb.type == type)
                out.insert({std::min<std::size_t>(i, nb.node),
                            std::max<std::size_t>(i, nb.node)});
    return out;
}

} // namespace

TEST_CASE("dependency edges join same-job pairs only") {
    DatacenterState state = tiny_state({{1, 2}, {3}}, 2);
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    const HeteroGraph g = build_graph(state, scales, 300.0);
    REQUIRE(g.n_tasks == 3);
    const auto dep = edges_of(g, EdgeType::Dependency);
    CHECK(dep == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(edges_of(g, EdgeType::Allocation).empty());
}

TEST_CASE("decision overlay adds the allocation edges") {
    DatacenterState state = tiny_state({{1, 2}}, 2);
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    SchedulingDecision d;
    d.assignments = {{1, 1}, {2, 1}};
    const HeteroGraph g = build_graph(state, scales, 300.0, &d);
    const auto alloc = edges_of(g, EdgeType::Allocation);
    // host 1 is node index n_tasks + 1 = 3.
    CHECK(alloc == std::set<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 3}});
}

TEST_CASE("scripted 5-task 3-host adjacency matches hand enumeration") {
    DatacenterState state = tiny_state({{1, 2, 3}, {4, 5}}, 3);
    for (auto& [id, t] : state.tasks) {
        t.state = TaskState::Allocated;
        t.host = static_cast<HostId>((id - 1) % 3); // 1->h0 2->h1 3->h2 4->h0 5->h1
    }
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    const HeteroGraph g = build_graph(state, scales, 300.0);

    // Tasks are nodes 0..4, hosts 5..7.
    const auto dep = edges_of(g, EdgeType::Dependency);
    const std::set<std::pair<std::size_t, std::size_t>> expected_dep = {
        {0, 1}, {0, 2}, {1, 2}, {3, 4}};
    CHECK(dep == expected_dep);
    const auto alloc = edges_of(g, EdgeType::Allocation);
    const std::set<std::pair<std::size_t, std::size_t>> expected_alloc = {
        {0, 5}, {1, 6}, {2, 7}, {3, 5}, {4, 6}};
    CHECK(alloc == expected_alloc);
    // Each task has at most one allocation edge.
    for (std::size_t i = 0; i < g.n_tasks; ++i) {
        std::size_t alloc_deg = 0;
        for (const auto& nb : g.adj[i])
            if (nb.type == EdgeType::Allocation) ++alloc_deg;
        CHECK(alloc_deg <= 1);
    }
}

TEST_CASE("features are normalized into the unit interval") {
    DatacenterState state = tiny_state({{1, 2, 3}}, 2);
    state.usage[0].ips_demand = 3000.0;
    state.usage[0].ram_mb = 4000.0;
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    const HeteroGraph g = build_graph(state, scales, 300.0);
    for (const auto& f : g.features)
        for (double v : f) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    // Host marker bit set only on host nodes.
    for (std::size_t i = 0; i < g.n_nodes(); ++i)
        CHECK(g.features[i][kFeatIsHost] == (i >= g.n_tasks ? 1.0 : 0.0));
}

TEST_CASE("allocation rewiring restores the exact adjacency") {
    DatacenterState state = tiny_state({{1, 2, 3}}, 3);
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    SchedulingDecision d;
    d.assignments = {{1, 0}, {2, 1}};
    HeteroGraph g = build_graph(state, scales, 300.0, &d);
    const HeteroGraph before = g;

    g.set_allocation(0, static_cast<std::int32_t>(g.host_node(2)));
    g.set_allocation(2, static_cast<std::int32_t>(g.host_node(0)));
    g.set_allocation(2, -1);
    g.set_allocation(0, static_cast<std::int32_t>(g.host_node(0)));
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        REQUIRE(g.adj[i].size() == before.adj[i].size());
        for (std::size_t e = 0; e < g.adj[i].size(); ++e)
            CHECK(g.adj[i][e] == before.adj[i][e]);
    }
}

TEST_CASE("thermal input has fixed per-host dimensionality") {
    DatacenterState state = tiny_state({{1, 2, 3}}, 4);
    state.hosts[2].temperature_c = 150.0; // clamps to 1
    const FeatureScales scales = FeatureScales::from_fleet(state.hosts, make_params());
    const ThermalInput t = build_thermal_input(state, scales, 11);
    CHECK(t.n_hosts == 4);
    CHECK(t.features_per_host == 12);
    CHECK(t.values.size() == 48);
    CHECK(t.row(0)[0] == 0.0);       // ambient start
    CHECK(t.row(2)[0] == 1.0);       // hot host clamped
    for (double v : t.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}
