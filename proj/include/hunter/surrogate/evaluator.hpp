#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/surrogate/ggcn.hpp"
#include "hunter/surrogate/graph.hpp"

namespace hunter {

struct SurrogateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scores candidate allocations S(t,h) against the GGCN surrogate. A full
// forward pass is memoized per interval; each candidate differs from the base
// graph by one allocation edge, so only nodes within message range of the
// rewired endpoints are recomputed. The arithmetic per node reuses the exact
// kernels of the full pass, which keeps candidate scores bitwise identical to
// a from-scratch forward on the mutated graph.
class GgcnEvaluator {
public:
    GgcnEvaluator(const GgcnModel& model, const FeatureScales& scales,
                  double interval_seconds)
        : model_(&model), scales_(scales), interval_seconds_(interval_seconds) {}

    void begin(const DatacenterState& state) {
        graph_ = build_graph(state, scales_, interval_seconds_);
        thermal_ = build_thermal_input(state, scales_,
                                       model_->config.thermal_features - 1);
        node_of_.clear();
        for (std::size_t i = 0; i < graph_.n_tasks; ++i) node_of_[graph_.task_ids[i]] = i;
        base_output_ = forward(*model_, graph_, thermal_, memo_);
        allocate_overlays();
    }

    double base_score() const { return base_output_; }
    const HeteroGraph& graph() const { return graph_; }
    const ThermalInput& thermal() const { return thermal_; }

    double score(TaskId task, HostId host) {
        const double value = evaluate(task_node(task), host_node(host), false);
        if (!std::isfinite(value))
            throw SurrogateError("surrogate produced a non-finite score");
        return value;
    }

    void commit(TaskId task, HostId host) {
        base_output_ = evaluate(task_node(task), host_node(host), true);
    }

private:
    std::size_t task_node(TaskId task) const {
        auto it = node_of_.find(task);
        if (it == node_of_.end()) throw std::logic_error("task not in decision graph");
        return it->second;
    }

    std::int32_t host_node(HostId host) const {
        if (host >= graph_.n_hosts) throw std::logic_error("host not in decision graph");
        return static_cast<std::int32_t>(graph_.host_node(host));
    }

    void allocate_overlays() {
        const std::size_t n = graph_.n_nodes();
        const std::size_t h = model_->config.hidden;
        const std::size_t rounds = model_->config.rounds;
        ov_h_.assign(rounds, Matrix(n, h));
        ov_msg_dep_.assign(rounds, Matrix(n, h));
        ov_msg_alloc_.assign(rounds, Matrix(n, h));
        ov_ff_ = Matrix(graph_.n_tasks, h);
        stamp_h_.assign(rounds * n, 0);
        stamp_msg_.assign(rounds * n, 0);
        stamp_ff_.assign(graph_.n_tasks, 0);
        epoch_ = 0;
        scratch_z_.assign(h, 0.0);
        scratch_r_.assign(h, 0.0);
        scratch_n_.assign(h, 0.0);
        scratch_unh_.assign(h, 0.0);
    }

    // Recomputes the affected cone after rewiring task_node -> new_host and
    // returns the head output. In commit mode the memoized state is updated in
    // place and the graph keeps the new edge; otherwise the overlay absorbs
    // all writes and the edge is restored.
    double evaluate(std::size_t task_node, std::int32_t new_host, bool commit) {
        const std::int32_t old_host = graph_.task_alloc[task_node];
        if (old_host == new_host) return base_output_;
        graph_.set_allocation(task_node, new_host);
        ++epoch_;

        const std::size_t n = graph_.n_nodes();
        const std::size_t h = model_->config.hidden;
        const std::size_t rounds = model_->config.rounds;

        std::vector<std::uint32_t> edge_nodes{static_cast<std::uint32_t>(task_node)};
        if (new_host >= 0) edge_nodes.push_back(static_cast<std::uint32_t>(new_host));
        if (old_host >= 0) edge_nodes.push_back(static_cast<std::uint32_t>(old_host));
        std::sort(edge_nodes.begin(), edge_nodes.end());

        std::vector<std::uint32_t> changed_prev; // C_{k-1}: nodes with changed r^{k-1}
        std::vector<std::uint32_t> recompute, changed_now;
        std::vector<double> u_buf;

        for (std::size_t k = 0; k < rounds; ++k) {
            // Messages out of nodes whose previous embedding changed.
            for (std::uint32_t j : changed_prev) {
                double* mdep = commit ? memo_.rounds[k].msg_dep.row(j)
                                      : ov_msg_dep_[k].row(j);
                double* malloc_row = commit ? memo_.rounds[k].msg_alloc.row(j)
                                            : ov_msg_alloc_[k].row(j);
                detail::message_rows(model_->params, k, prev_row(k, j, commit), mdep,
                                     malloc_row);
                if (!commit) stamp_msg_[k * n + j] = epoch_;
            }

            // Nodes whose aggregate changes: rewired endpoints plus neighbors
            // of changed nodes.
            recompute.assign(edge_nodes.begin(), edge_nodes.end());
            for (std::uint32_t j : changed_prev)
                for (const auto& nb : graph_.adj[j]) recompute.push_back(nb.node);
            std::sort(recompute.begin(), recompute.end());
            recompute.erase(std::unique(recompute.begin(), recompute.end()),
                            recompute.end());

            changed_now.clear();
            changed_now.reserve(recompute.size() + changed_prev.size());
            std::merge(recompute.begin(), recompute.end(), changed_prev.begin(),
                       changed_prev.end(), std::back_inserter(changed_now));
            changed_now.erase(std::unique(changed_now.begin(), changed_now.end()),
                              changed_now.end());

            for (std::uint32_t i : changed_now) {
                const double* prev_r = prev_row(k, i, commit);
                const double* hidden = k == 0 ? nullptr : prev_r;
                const double* x_row;
                std::vector<double>& x_buf = scratch_x_;
                const bool aggregate =
                    std::binary_search(recompute.begin(), recompute.end(), i);
                if (aggregate) {
                    x_buf.resize(h);
                    aggregate_overlay(k, i, commit, x_buf.data());
                    x_row = x_buf.data();
                } else {
                    x_row = memo_.rounds[k].x.row(i);
                }
                double* out = commit ? memo_.rounds[k].h.row(i) : ov_h_[k].row(i);
                detail::gru_cell(model_->params, h, prev_r, x_row, hidden,
                                 scratch_z_.data(), scratch_r_.data(), scratch_n_.data(),
                                 scratch_unh_.data(), out, u_buf);
                if (commit && aggregate)
                    std::copy(x_row, x_row + h, memo_.rounds[k].x.row(i));
                if (!commit) stamp_h_[k * n + i] = epoch_;
            }
            changed_prev = changed_now;
        }

        // Readout rows for tasks whose final embedding changed, then the head
        // with the memoized thermal context. Summation runs over all task
        // nodes in canonical order, matching the full pass bit for bit.
        const GgcnParams& p = model_->params;
        for (std::uint32_t i : changed_prev) {
            if (i >= graph_.n_tasks) continue;
            double* row = commit ? memo_.task_ff.row(i) : ov_ff_.row(i);
            matvec(p.readout_w, final_row(i, commit), row);
            const double* b = p.readout_b.row(0);
            for (std::size_t j = 0; j < h; ++j) row[j] += b[j];
            if (!commit) stamp_ff_[i] = epoch_;
        }
        std::vector<double>& e_s = scratch_es_;
        e_s.assign(h, 0.0);
        for (std::size_t i = 0; i < graph_.n_tasks; ++i) {
            const double* row = (!commit && stamp_ff_[i] == epoch_) ? ov_ff_.row(i)
                                                                    : memo_.task_ff.row(i);
            vec_add(e_s.data(), row, h);
        }
        if (graph_.n_tasks > 0)
            for (double& v : e_s) v /= static_cast<double>(graph_.n_tasks);

        double pre = p.out_b(0, 0);
        const double* ow = p.out_w.row(0);
        for (std::size_t j = 0; j < h; ++j)
            pre += ow[j] * (e_s[j] * memo_.context[j]);
        const double output = sigmoid(pre);

        if (commit) {
            memo_.e_s.assign(e_s.begin(), e_s.end());
            memo_.pre_sigmoid = pre;
            memo_.output = output;
        } else {
            graph_.set_allocation(task_node, old_host);
        }
        return output;
    }

    const double* prev_row(std::size_t round, std::uint32_t node, bool commit) const {
        if (round == 0) return memo_.r0.row(node);
        const std::size_t n = graph_.n_nodes();
        if (!commit && stamp_h_[(round - 1) * n + node] == epoch_)
            return ov_h_[round - 1].row(node);
        return memo_.rounds[round - 1].h.row(node);
    }

    const double* final_row(std::uint32_t node, bool commit) const {
        const std::size_t last = model_->config.rounds - 1;
        const std::size_t n = graph_.n_nodes();
        if (!commit && stamp_h_[last * n + node] == epoch_) return ov_h_[last].row(node);
        return memo_.rounds[last].h.row(node);
    }

    void aggregate_overlay(std::size_t round, std::uint32_t node, bool commit,
                           double* x) const {
        const std::size_t h = model_->config.hidden;
        const std::size_t n = graph_.n_nodes();
        std::fill(x, x + h, 0.0);
        for (const auto& nb : graph_.adj[node]) {
            const double* m;
            if (nb.type == EdgeType::Dependency) {
                m = (!commit && stamp_msg_[round * n + nb.node] == epoch_)
                        ? ov_msg_dep_[round].row(nb.node)
                        : memo_.rounds[round].msg_dep.row(nb.node);
            } else {
                m = (!commit && stamp_msg_[round * n + nb.node] == epoch_)
                        ? ov_msg_alloc_[round].row(nb.node)
                        : memo_.rounds[round].msg_alloc.row(nb.node);
            }
            vec_add(x, m, h);
        }
    }

    const GgcnModel* model_;
    FeatureScales scales_;
    double interval_seconds_;

    HeteroGraph graph_;
    ThermalInput thermal_;
    ForwardCache memo_;
    std::map<TaskId, std::size_t> node_of_;
    double base_output_ = 0.5;

    std::vector<Matrix> ov_h_, ov_msg_dep_, ov_msg_alloc_;
    Matrix ov_ff_;
    std::vector<std::uint32_t> stamp_h_, stamp_msg_, stamp_ff_;
    std::uint32_t epoch_ = 0;
    std::vector<double> scratch_z_, scratch_r_, scratch_n_, scratch_unh_;
    mutable std::vector<double> scratch_x_, scratch_es_;
};

} // namespace hunter
