#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/core/types.hpp"

namespace hunter {

// Unified node feature layout shared by task and host nodes. Task nodes carry
// demand plus normalized remaining SLA; host nodes carry measured utilization
// plus capacities. Unused slots stay zero.
enum NodeFeature : std::size_t {
    kFeatCpu = 0,
    kFeatRam,
    kFeatRamRead,
    kFeatRamWrite,
    kFeatDisk,
    kFeatDiskRead,
    kFeatDiskWrite,
    kFeatNet,
    kFeatSla,
    kFeatCapCpu,
    kFeatCapRam,
    kFeatCapDisk,
    kFeatCapNet,
    kFeatIsHost,
    kNodeFeatureCount
};

enum class EdgeType : std::uint8_t { Dependency = 0, Allocation = 1 };

// Min-max denominators for feature scaling, fixed per experiment so graphs
// from different intervals are comparable.
struct FeatureScales {
    double cpu_ips = 1.0;
    double ram_mb = 1.0;
    double disk_mb = 1.0;
    double net_mbps = 1.0;
    double rate_mbps = 500.0;
    double sla_s = 7200.0;
    double ambient_c = 25.0;
    double max_safe_temperature_c = 120.0;
    double power_w = 1.0;

    static FeatureScales from_fleet(const std::vector<Host>& hosts, const SimParams& params) {
        FeatureScales s;
        s.ambient_c = params.thermal.ambient_c;
        s.max_safe_temperature_c = params.max_safe_temperature_c;
        s.rate_mbps = params.storage_rate_reference_mbps;
        for (const auto& h : hosts) {
            s.cpu_ips = std::max(s.cpu_ips, h.cpu_capacity_ips);
            s.ram_mb = std::max(s.ram_mb, h.ram_capacity_mb);
            s.disk_mb = std::max(s.disk_mb, h.disk_capacity_mb);
            s.net_mbps = std::max(s.net_mbps, h.bandwidth_capacity_mbps);
            s.power_w = std::max(s.power_w, h.max_power_w());
        }
        return s;
    }
};

// The combined [S, D] heterogeneous graph. Nodes 0..n_tasks-1 are tasks in
// ascending task-id order, followed by all hosts in id order. Adjacency lists
// are kept sorted by (edge type, neighbor) so that message aggregation has one
// canonical summation order everywhere.
struct HeteroGraph {
    struct Neighbor {
        std::uint32_t node;
        EdgeType type;
        bool operator<(const Neighbor& o) const {
            if (type != o.type) return type < o.type;
            return node < o.node;
        }
        bool operator==(const Neighbor& o) const {
            return node == o.node && type == o.type;
        }
    };

    std::size_t n_tasks = 0;
    std::size_t n_hosts = 0;
    std::vector<std::array<double, kNodeFeatureCount>> features;
    std::vector<std::vector<Neighbor>> adj;
    std::vector<TaskId> task_ids;        // node index -> task id
    std::vector<std::int32_t> task_alloc; // task node -> host node, -1 if none

    std::size_t n_nodes() const { return n_tasks + n_hosts; }
    std::size_t host_node(std::size_t host_index) const { return n_tasks + host_index; }

    void add_edge(std::size_t a, std::size_t b, EdgeType type) {
        insert_neighbor(a, {static_cast<std::uint32_t>(b), type});
        insert_neighbor(b, {static_cast<std::uint32_t>(a), type});
    }

    // Rewires the allocation edge of a task node; host_node_index == -1
    // detaches the task. Keeps adjacency canonical.
    void set_allocation(std::size_t task_node, std::int32_t host_node_index) {
        const std::int32_t old = task_alloc[task_node];
        if (old == host_node_index) return;
        if (old >= 0) {
            erase_neighbor(task_node,
                           {static_cast<std::uint32_t>(old), EdgeType::Allocation});
            erase_neighbor(static_cast<std::size_t>(old),
                           {static_cast<std::uint32_t>(task_node), EdgeType::Allocation});
        }
        if (host_node_index >= 0) {
            insert_neighbor(task_node, {static_cast<std::uint32_t>(host_node_index),
                                        EdgeType::Allocation});
            insert_neighbor(static_cast<std::size_t>(host_node_index),
                            {static_cast<std::uint32_t>(task_node), EdgeType::Allocation});
        }
        task_alloc[task_node] = host_node_index;
    }

private:
    void insert_neighbor(std::size_t node, Neighbor nb) {
        auto& list = adj[node];
        list.insert(std::lower_bound(list.begin(), list.end(), nb), nb);
    }
    void erase_neighbor(std::size_t node, Neighbor nb) {
        auto& list = adj[node];
        auto it = std::lower_bound(list.begin(), list.end(), nb);
        if (it == list.end() || !(*it == nb))
            throw std::logic_error("allocation edge missing from adjacency");
        list.erase(it);
    }
};

// Per-host thermal rows: normalized temperature followed by the power-profile
// knots scaled by the fleet's peak wattage.
struct ThermalInput {
    std::size_t n_hosts = 0;
    std::size_t features_per_host = 0;
    std::vector<double> values; // row-major

    const double* row(std::size_t h) const { return values.data() + h * features_per_host; }
};

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Builds [S, D] from the live state: dependency edges join every same-job
// task pair, allocation edges mirror current placements. Optionally a
// decision overlays extra allocation edges (its assignments win over state).
inline HeteroGraph build_graph(const DatacenterState& state, const FeatureScales& scales,
                               double interval_seconds,
                               const SchedulingDecision* decision = nullptr) {
    HeteroGraph g;
    // Node universe: every live (non-completed) task.
    std::vector<const Task*> live;
    for (const auto& [id, task] : state.tasks)
        if (task.state != TaskState::Completed) live.push_back(&task);
    g.n_tasks = live.size();
    g.n_hosts = state.hosts.size();
    g.features.resize(g.n_nodes());
    g.adj.resize(g.n_nodes());
    g.task_ids.resize(g.n_tasks);
    g.task_alloc.assign(g.n_tasks, -1);

    std::map<TaskId, std::size_t> node_of;
    for (std::size_t i = 0; i < live.size(); ++i) {
        g.task_ids[i] = live[i]->id;
        node_of[live[i]->id] = i;
    }

    const double now_s = static_cast<double>(state.interval_index) * interval_seconds;
    for (std::size_t i = 0; i < live.size(); ++i) {
        const Task& task = *live[i];
        const ResourceDemand& d = task.current_demand();
        auto& f = g.features[i];
        f.fill(0.0);
        f[kFeatCpu] = clamp01(d.cpu_ips / scales.cpu_ips);
        f[kFeatRam] = clamp01(d.ram_mb / scales.ram_mb);
        f[kFeatRamRead] = clamp01(d.ram_read / scales.rate_mbps);
        f[kFeatRamWrite] = clamp01(d.ram_write / scales.rate_mbps);
        f[kFeatDisk] = clamp01(d.disk_mb / scales.disk_mb);
        f[kFeatDiskRead] = clamp01(d.disk_read / scales.rate_mbps);
        f[kFeatDiskWrite] = clamp01(d.disk_write / scales.rate_mbps);
        f[kFeatNet] = clamp01(d.net_mbps / scales.net_mbps);
        const double elapsed_s =
            now_s - static_cast<double>(task.created_at) * interval_seconds;
        f[kFeatSla] = clamp01((task.sla_deadline_s - elapsed_s) / scales.sla_s);
    }
    for (std::size_t hi = 0; hi < state.hosts.size(); ++hi) {
        const Host& host = state.hosts[hi];
        const HostUsage& u = state.usage[hi];
        auto& f = g.features[g.host_node(hi)];
        f.fill(0.0);
        f[kFeatCpu] = clamp01(u.ips_demand / scales.cpu_ips);
        f[kFeatRam] = clamp01(u.ram_mb / scales.ram_mb);
        f[kFeatRamRead] = clamp01(u.ram_read / scales.rate_mbps);
        f[kFeatRamWrite] = clamp01(u.ram_write / scales.rate_mbps);
        f[kFeatDisk] = clamp01(u.disk_mb / scales.disk_mb);
        f[kFeatDiskRead] = clamp01(u.disk_read / scales.rate_mbps);
        f[kFeatDiskWrite] = clamp01(u.disk_write / scales.rate_mbps);
        f[kFeatNet] = clamp01(u.net_mbps / scales.net_mbps);
        f[kFeatCapCpu] = clamp01(host.cpu_capacity_ips / scales.cpu_ips);
        f[kFeatCapRam] = clamp01(host.ram_capacity_mb / scales.ram_mb);
        f[kFeatCapDisk] = clamp01(host.disk_capacity_mb / scales.disk_mb);
        f[kFeatCapNet] = clamp01(host.bandwidth_capacity_mbps / scales.net_mbps);
        f[kFeatIsHost] = 1.0;
    }

    // Dependency edges: all unordered same-job pairs.
    for (const auto& [jid, job] : state.jobs) {
        std::vector<std::size_t> members;
        for (TaskId tid : job.task_ids) {
            auto it = node_of.find(tid);
            if (it != node_of.end()) members.push_back(it->second);
        }
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                g.add_edge(members[a], members[b], EdgeType::Dependency);
    }

    // Allocation edges from the live placements (migrating tasks count on
    // their destination), then the decision overlay.
    for (std::size_t i = 0; i < live.size(); ++i) {
        const Task& task = *live[i];
        if (task.state == TaskState::Allocated || task.state == TaskState::Migrating)
            g.set_allocation(i, static_cast<std::int32_t>(g.host_node(task.host)));
    }
    if (decision != nullptr) {
        for (const auto& [tid, hid] : decision->assignments) {
            auto it = node_of.find(tid);
            if (it == node_of.end()) throw std::logic_error("decision names unknown task");
            if (hid >= state.hosts.size())
                throw std::logic_error("decision names unknown host");
            g.set_allocation(it->second, static_cast<std::int32_t>(g.host_node(hid)));
        }
    }
    return g;
}

inline ThermalInput build_thermal_input(const DatacenterState& state,
                                        const FeatureScales& scales,
                                        std::size_t profile_knots = 11) {
    ThermalInput t;
    t.n_hosts = state.hosts.size();
    t.features_per_host = 1 + profile_knots;
    t.values.assign(t.n_hosts * t.features_per_host, 0.0);
    const double span = scales.max_safe_temperature_c - scales.ambient_c;
    for (std::size_t h = 0; h < t.n_hosts; ++h) {
        const Host& host = state.hosts[h];
        double* row = t.values.data() + h * t.features_per_host;
        row[0] = clamp01((host.temperature_c - scales.ambient_c) / span);
        for (std::size_t k = 0; k < profile_knots; ++k) {
            const double load =
                static_cast<double>(k) / static_cast<double>(profile_knots - 1);
            row[1 + k] = clamp01(power_at_load(host.power_profile, load) / scales.power_w);
        }
    }
    return t;
}

} // namespace hunter
