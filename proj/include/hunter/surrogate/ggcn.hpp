#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hunter/core/rng.hpp"
#include "hunter/surrogate/graph.hpp"
#include "hunter/surrogate/linalg.hpp"

namespace hunter {

struct GgcnConfig {
    std::size_t hidden = 64;            // width of every layer
    std::size_t rounds = 4;             // p message-passing rounds
    std::size_t node_features = kNodeFeatureCount;
    std::size_t thermal_features = 12;  // temperature + 11 profile knots

    void validate() const {
        if (hidden == 0 || rounds == 0 || node_features == 0 || thermal_features == 0)
            throw std::invalid_argument("ggcn dimensions must be positive");
    }
};

// Every trainable tensor of the surrogate. Gradients and optimizer moments
// reuse the same struct so all three stay shape-synchronized by construction.
//
// The GRU cell consumes the concatenation [r_prev ; x] as its input while its
// hidden state starts from the zero vector on round one; from round two on the
// hidden state is the previous round's embedding.
struct GgcnParams {
    Matrix embed_w, embed_b;
    std::vector<std::array<Matrix, 2>> msg_w; // [round][Dependency|Allocation]
    Matrix gru_wz, gru_uz, gru_bz;
    Matrix gru_wr, gru_ur, gru_br;
    Matrix gru_wn, gru_un, gru_bn;
    Matrix readout_w, readout_b;
    Matrix therm1_w, therm1_b;
    Matrix therm2_w, therm2_b;
    Matrix attn_v;
    Matrix out_w, out_b;

    static GgcnParams shaped(const GgcnConfig& c) {
        const std::size_t h = c.hidden;
        GgcnParams p;
        p.embed_w = Matrix(h, c.node_features);
        p.embed_b = Matrix(1, h);
        p.msg_w.resize(c.rounds);
        for (auto& pair : p.msg_w) {
            pair[0] = Matrix(h, h);
            pair[1] = Matrix(h, h);
        }
        p.gru_wz = Matrix(h, 2 * h);
        p.gru_uz = Matrix(h, h);
        p.gru_bz = Matrix(1, h);
        p.gru_wr = Matrix(h, 2 * h);
        p.gru_ur = Matrix(h, h);
        p.gru_br = Matrix(1, h);
        p.gru_wn = Matrix(h, 2 * h);
        p.gru_un = Matrix(h, h);
        p.gru_bn = Matrix(1, h);
        p.readout_w = Matrix(h, h);
        p.readout_b = Matrix(1, h);
        p.therm1_w = Matrix(h, c.thermal_features);
        p.therm1_b = Matrix(1, h);
        p.therm2_w = Matrix(h, h);
        p.therm2_b = Matrix(1, h);
        p.attn_v = Matrix(1, h);
        p.out_w = Matrix(1, h);
        p.out_b = Matrix(1, 1);
        return p;
    }

    // Fixed-order tensor table; the order is part of the model file layout.
    std::vector<std::pair<std::string, Matrix*>> tensors() {
        std::vector<std::pair<std::string, Matrix*>> out = {
            {"embed_w", &embed_w},   {"embed_b", &embed_b},
            {"gru_wz", &gru_wz},     {"gru_uz", &gru_uz},   {"gru_bz", &gru_bz},
            {"gru_wr", &gru_wr},     {"gru_ur", &gru_ur},   {"gru_br", &gru_br},
            {"gru_wn", &gru_wn},     {"gru_un", &gru_un},   {"gru_bn", &gru_bn},
            {"readout_w", &readout_w}, {"readout_b", &readout_b},
            {"therm1_w", &therm1_w}, {"therm1_b", &therm1_b},
            {"therm2_w", &therm2_w}, {"therm2_b", &therm2_b},
            {"attn_v", &attn_v},     {"out_w", &out_w},     {"out_b", &out_b}};
        for (std::size_t k = 0; k < msg_w.size(); ++k) {
            out.push_back({"msg_w" + std::to_string(k) + "_dep", &msg_w[k][0]});
            out.push_back({"msg_w" + std::to_string(k) + "_alloc", &msg_w[k][1]});
        }
        return out;
    }

    std::vector<std::pair<std::string, const Matrix*>> tensors() const {
        auto mutable_list = const_cast<GgcnParams*>(this)->tensors();
        std::vector<std::pair<std::string, const Matrix*>> out;
        out.reserve(mutable_list.size());
        for (auto& [name, m] : mutable_list) out.push_back({name, m});
        return out;
    }

    void zero() {
        for (auto& [name, m] : tensors()) m->zero();
    }
};

struct GgcnModel {
    GgcnConfig config;
    GgcnParams params;
};

inline bool is_bias_tensor(const std::string& name) {
    return name.size() >= 2 && (name.compare(name.size() - 2, 2, "_b") == 0 ||
                                name.compare(name.size() - 3, 3, "_bz") == 0 ||
                                name.compare(name.size() - 3, 3, "_br") == 0 ||
                                name.compare(name.size() - 3, 3, "_bn") == 0);
}

// Glorot-uniform weights, zero biases.
inline GgcnModel make_model(const GgcnConfig& config, std::uint64_t seed) {
    config.validate();
    GgcnModel model;
    model.config = config;
    model.params = GgcnParams::shaped(config);
    Rng rng(mix_seed(seed, 0x99CC));
    for (auto& [name, m] : model.params.tensors()) {
        if (is_bias_tensor(name)) continue;
        const double bound =
            std::sqrt(6.0 / static_cast<double>(m->rows + m->cols));
        for (double& v : m->data) v = rng.uniform(-bound, bound);
    }
    return model;
}

struct RoundCache {
    Matrix msg_dep, msg_alloc; // W^k_type * r^{k-1}, per node
    Matrix x;                  // aggregated incoming messages
    Matrix z, r, n, un_h, h;   // gate activations and new state
};

struct ForwardCache {
    std::size_t n_nodes = 0, n_tasks = 0, n_hosts = 0;
    Matrix r0;
    std::vector<RoundCache> rounds;
    Matrix task_ff;
    std::vector<double> e_s;
    Matrix th1, th2;
    std::vector<double> logits, attn, context, gate;
    double pre_sigmoid = 0.0;
    double output = 0.5;
};

namespace detail {

inline void resize_cache(ForwardCache& cache, const GgcnConfig& cfg, std::size_t n_nodes,
                         std::size_t n_tasks, std::size_t n_hosts) {
    const std::size_t h = cfg.hidden;
    cache.n_nodes = n_nodes;
    cache.n_tasks = n_tasks;
    cache.n_hosts = n_hosts;
    cache.r0 = Matrix(n_nodes, h);
    cache.rounds.assign(cfg.rounds, RoundCache{});
    for (auto& rc : cache.rounds) {
        rc.msg_dep = Matrix(n_nodes, h);
        rc.msg_alloc = Matrix(n_nodes, h);
        rc.x = Matrix(n_nodes, h);
        rc.z = Matrix(n_nodes, h);
        rc.r = Matrix(n_nodes, h);
        rc.n = Matrix(n_nodes, h);
        rc.un_h = Matrix(n_nodes, h);
        rc.h = Matrix(n_nodes, h);
    }
    cache.task_ff = Matrix(n_tasks, h);
    cache.e_s.assign(h, 0.0);
    cache.th1 = Matrix(n_hosts, h);
    cache.th2 = Matrix(n_hosts, h);
    cache.logits.assign(n_hosts, 0.0);
    cache.attn.assign(n_hosts, 0.0);
    cache.context.assign(h, 0.0);
    cache.gate.assign(h, 0.0);
}

// One embedding row: tanh(W e + b).
inline void embed_node(const GgcnParams& p, const double* features, double* out) {
    matvec(p.embed_w, features, out);
    const double* b = p.embed_b.row(0);
    for (std::size_t j = 0; j < p.embed_w.rows; ++j) out[j] = std::tanh(out[j] + b[j]);
}

inline void message_rows(const GgcnParams& p, std::size_t round, const double* prev_r,
                         double* msg_dep, double* msg_alloc) {
    matvec(p.msg_w[round][0], prev_r, msg_dep);
    matvec(p.msg_w[round][1], prev_r, msg_alloc);
}

// Aggregates incoming messages in the canonical adjacency order.
inline void aggregate_messages(const HeteroGraph& g, std::size_t node, const Matrix& msg_dep,
                               const Matrix& msg_alloc, std::size_t h, double* x) {
    std::fill(x, x + h, 0.0);
    for (const auto& nb : g.adj[node]) {
        const double* m = nb.type == EdgeType::Dependency ? msg_dep.row(nb.node)
                                                          : msg_alloc.row(nb.node);
        vec_add(x, m, h);
    }
}

// GRU cell on input [prev_r ; x] with optional hidden state (nullptr on the
// first round, matching the zero initial hidden state).
inline void gru_cell(const GgcnParams& p, std::size_t h, const double* prev_r,
                     const double* x, const double* hidden, double* z, double* r,
                     double* n, double* un_h, double* out, std::vector<double>& u_buf) {
    u_buf.resize(2 * h);
    std::memcpy(u_buf.data(), prev_r, h * sizeof(double));
    std::memcpy(u_buf.data() + h, x, h * sizeof(double));
    const double* u = u_buf.data();

    matvec(p.gru_wz, u, z);
    matvec(p.gru_wr, u, r);
    matvec(p.gru_wn, u, n);
    if (hidden != nullptr) {
        matvec_add(p.gru_uz, hidden, z);
        matvec_add(p.gru_ur, hidden, r);
        matvec(p.gru_un, hidden, un_h);
    } else {
        std::fill(un_h, un_h + h, 0.0);
    }
    const double* bz = p.gru_bz.row(0);
    const double* br = p.gru_br.row(0);
    const double* bn = p.gru_bn.row(0);
    for (std::size_t j = 0; j < h; ++j) {
        z[j] = sigmoid(z[j] + bz[j]);
        r[j] = sigmoid(r[j] + br[j]);
        n[j] = std::tanh(n[j] + r[j] * un_h[j] + bn[j]);
        const double prev_h = hidden != nullptr ? hidden[j] : 0.0;
        out[j] = (1.0 - z[j]) * n[j] + z[j] * prev_h;
    }
}

// Runs every stage after message passing: readout over task nodes, per-host
// thermal encoder, attention pooling and the sigmoid head.
inline void forward_head(const GgcnModel& model, const ThermalInput& thermal,
                         ForwardCache& cache) {
    const std::size_t h = model.config.hidden;
    const GgcnParams& p = model.params;
    const Matrix& final_h =
        model.config.rounds > 0 ? cache.rounds.back().h : cache.r0;

    std::fill(cache.e_s.begin(), cache.e_s.end(), 0.0);
    for (std::size_t i = 0; i < cache.n_tasks; ++i) {
        double* row = cache.task_ff.row(i);
        matvec(p.readout_w, final_h.row(i), row);
        const double* b = p.readout_b.row(0);
        for (std::size_t j = 0; j < h; ++j) row[j] += b[j];
        vec_add(cache.e_s.data(), row, h);
    }
    if (cache.n_tasks > 0)
        for (double& v : cache.e_s) v /= static_cast<double>(cache.n_tasks);

    for (std::size_t hi = 0; hi < cache.n_hosts; ++hi) {
        double* row1 = cache.th1.row(hi);
        matvec(p.therm1_w, thermal.row(hi), row1);
        const double* b1 = p.therm1_b.row(0);
        for (std::size_t j = 0; j < h; ++j) row1[j] = std::max(0.0, row1[j] + b1[j]);
        double* row2 = cache.th2.row(hi);
        matvec(p.therm2_w, row1, row2);
        const double* b2 = p.therm2_b.row(0);
        for (std::size_t j = 0; j < h; ++j) row2[j] = std::max(0.0, row2[j] + b2[j]);
        double logit = 0.0;
        const double* av = p.attn_v.row(0);
        for (std::size_t j = 0; j < h; ++j) logit += av[j] * row2[j];
        cache.logits[hi] = logit;
    }
    double mx = cache.logits[0];
    for (double v : cache.logits) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t hi = 0; hi < cache.n_hosts; ++hi) {
        cache.attn[hi] = std::exp(cache.logits[hi] - mx);
        sum += cache.attn[hi];
    }
    std::fill(cache.context.begin(), cache.context.end(), 0.0);
    for (std::size_t hi = 0; hi < cache.n_hosts; ++hi) {
        cache.attn[hi] /= sum;
        const double* row2 = cache.th2.row(hi);
        for (std::size_t j = 0; j < h; ++j) cache.context[j] += cache.attn[hi] * row2[j];
    }

    double pre = p.out_b(0, 0);
    const double* ow = p.out_w.row(0);
    for (std::size_t j = 0; j < h; ++j) {
        cache.gate[j] = cache.e_s[j] * cache.context[j];
        pre += ow[j] * cache.gate[j];
    }
    cache.pre_sigmoid = pre;
    cache.output = sigmoid(pre);
}

} // namespace detail

// Full forward pass; returns the QoS estimate in (0,1) and fills the cache
// for backprop or incremental re-evaluation.
inline double forward(const GgcnModel& model, const HeteroGraph& graph,
                      const ThermalInput& thermal, ForwardCache& cache) {
    const GgcnConfig& cfg = model.config;
    if (graph.features.empty() && graph.n_hosts == 0)
        throw std::logic_error("ggcn forward on empty graph");
    if (graph.n_hosts == 0) throw std::logic_error("ggcn forward needs host nodes");
    for (const auto& f : graph.features)
        if (f.size() != cfg.node_features)
            throw std::logic_error("node feature width mismatch");
    if (thermal.features_per_host != cfg.thermal_features)
        throw std::logic_error("thermal feature width mismatch");
    if (thermal.n_hosts != graph.n_hosts)
        throw std::logic_error("thermal host count mismatch");

    detail::resize_cache(cache, cfg, graph.n_nodes(), graph.n_tasks, graph.n_hosts);
    const std::size_t h = cfg.hidden;
    const std::size_t n = graph.n_nodes();
    std::vector<double> u_buf;

    for (std::size_t i = 0; i < n; ++i)
        detail::embed_node(model.params, graph.features[i].data(), cache.r0.row(i));

    for (std::size_t k = 0; k < cfg.rounds; ++k) {
        const Matrix& prev = k == 0 ? cache.r0 : cache.rounds[k - 1].h;
        RoundCache& rc = cache.rounds[k];
        for (std::size_t j = 0; j < n; ++j)
            detail::message_rows(model.params, k, prev.row(j), rc.msg_dep.row(j),
                                 rc.msg_alloc.row(j));
        for (std::size_t i = 0; i < n; ++i)
            detail::aggregate_messages(graph, i, rc.msg_dep, rc.msg_alloc, h, rc.x.row(i));
        for (std::size_t i = 0; i < n; ++i) {
            const double* hidden = k == 0 ? nullptr : prev.row(i);
            detail::gru_cell(model.params, h, prev.row(i), rc.x.row(i), hidden,
                             rc.z.row(i), rc.r.row(i), rc.n.row(i), rc.un_h.row(i),
                             rc.h.row(i), u_buf);
        }
    }

    detail::forward_head(model, thermal, cache);
    return cache.output;
}

// Reverse-mode pass. d_output is dLoss/dOutput; gradients accumulate into
// `grads`, which must be shaped like the model parameters.
inline void backward(const GgcnModel& model, const HeteroGraph& graph,
                     const ThermalInput& thermal, const ForwardCache& cache,
                     double d_output, GgcnParams& grads) {
    const GgcnConfig& cfg = model.config;
    const GgcnParams& p = model.params;
    const std::size_t h = cfg.hidden;
    const std::size_t n = cache.n_nodes;

    std::vector<double> dgate(h), de_s(h), dcontext(h);
    const double dpre = d_output * cache.output * (1.0 - cache.output);
    grads.out_b(0, 0) += dpre;
    {
        double* gw = grads.out_w.row(0);
        const double* ow = p.out_w.row(0);
        for (std::size_t j = 0; j < h; ++j) {
            gw[j] += dpre * cache.gate[j];
            dgate[j] = dpre * ow[j];
            de_s[j] = dgate[j] * cache.context[j];
            dcontext[j] = dgate[j] * cache.e_s[j];
        }
    }

    // Attention and thermal encoder.
    {
        std::vector<double> dattn(cache.n_hosts), dlogit(cache.n_hosts);
        double weighted = 0.0;
        for (std::size_t hi = 0; hi < cache.n_hosts; ++hi) {
            const double* row2 = cache.th2.row(hi);
            double acc = 0.0;
            for (std::size_t j = 0; j < h; ++j) acc += dcontext[j] * row2[j];
            dattn[hi] = acc;
            weighted += cache.attn[hi] * acc;
        }
        std::vector<double> dth2(h), dpre2(h), dth1(h), dpre1(h);
        double* gav = grads.attn_v.row(0);
        const double* av = p.attn_v.row(0);
        for (std::size_t hi = 0; hi < cache.n_hosts; ++hi) {
            dlogit[hi] = cache.attn[hi] * (dattn[hi] - weighted);
            const double* row2 = cache.th2.row(hi);
            const double* row1 = cache.th1.row(hi);
            for (std::size_t j = 0; j < h; ++j) {
                gav[j] += dlogit[hi] * row2[j];
                dth2[j] = cache.attn[hi] * dcontext[j] + dlogit[hi] * av[j];
                dpre2[j] = row2[j] > 0.0 ? dth2[j] : 0.0;
            }
            add_outer(grads.therm2_w, dpre2.data(), row1);
            vec_add(grads.therm2_b.row(0), dpre2.data(), h);
            std::fill(dth1.begin(), dth1.end(), 0.0);
            matvec_transpose_add(p.therm2_w, dpre2.data(), dth1.data());
            for (std::size_t j = 0; j < h; ++j)
                dpre1[j] = row1[j] > 0.0 ? dth1[j] : 0.0;
            add_outer(grads.therm1_w, dpre1.data(), thermal.row(hi));
            vec_add(grads.therm1_b.row(0), dpre1.data(), h);
        }
    }

    // Readout over task nodes.
    Matrix d_cur(n, h);
    if (cache.n_tasks > 0) {
        std::vector<double> dtf(h);
        for (std::size_t j = 0; j < h; ++j)
            dtf[j] = de_s[j] / static_cast<double>(cache.n_tasks);
        const Matrix& final_h = cfg.rounds > 0 ? cache.rounds.back().h : cache.r0;
        for (std::size_t i = 0; i < cache.n_tasks; ++i) {
            add_outer(grads.readout_w, dtf.data(), final_h.row(i));
            vec_add(grads.readout_b.row(0), dtf.data(), h);
            matvec_transpose_add(p.readout_w, dtf.data(), d_cur.row(i));
        }
    }

    // Message-passing rounds, reversed.
    Matrix d_prev(n, h), dx(n, h), d_msg_dep(n, h), d_msg_alloc(n, h);
    std::vector<double> dz(h), dn(h), dnp(h), drp(h), dzp(h), dhid(h), du(2 * h);
    std::vector<std::uint8_t> touched_dep(n), touched_alloc(n);
    for (std::size_t k = cfg.rounds; k-- > 0;) {
        const RoundCache& rc = cache.rounds[k];
        const Matrix& prev = k == 0 ? cache.r0 : cache.rounds[k - 1].h;
        d_prev.zero();
        for (std::size_t i = 0; i < n; ++i) {
            const double* dh = d_cur.row(i);
            const double* z = rc.z.row(i);
            const double* r = rc.r.row(i);
            const double* nn = rc.n.row(i);
            const double* un_h = rc.un_h.row(i);
            const double* hidden = k == 0 ? nullptr : prev.row(i);
            std::fill(dhid.begin(), dhid.end(), 0.0);
            for (std::size_t j = 0; j < h; ++j) {
                const double hid = hidden != nullptr ? hidden[j] : 0.0;
                dz[j] = dh[j] * (hid - nn[j]);
                dn[j] = dh[j] * (1.0 - z[j]);
                if (hidden != nullptr) dhid[j] = dh[j] * z[j];
                dnp[j] = dn[j] * (1.0 - nn[j] * nn[j]);
                const double dr_gate = dnp[j] * un_h[j];
                drp[j] = dr_gate * r[j] * (1.0 - r[j]);
                dzp[j] = dz[j] * z[j] * (1.0 - z[j]);
            }
            vec_add(grads.gru_bn.row(0), dnp.data(), h);
            vec_add(grads.gru_br.row(0), drp.data(), h);
            vec_add(grads.gru_bz.row(0), dzp.data(), h);

            // Input side: u = [prev_r ; x].
            const double* prev_r = prev.row(i);
            const double* x = rc.x.row(i);
            auto accumulate_w = [&](Matrix& gw, const double* d) {
                for (std::size_t a = 0; a < h; ++a) {
                    if (d[a] == 0.0) continue;
                    double* row = gw.row(a);
                    for (std::size_t j = 0; j < h; ++j) {
                        row[j] += d[a] * prev_r[j];
                        row[h + j] += d[a] * x[j];
                    }
                }
            };
            accumulate_w(grads.gru_wn, dnp.data());
            accumulate_w(grads.gru_wr, drp.data());
            accumulate_w(grads.gru_wz, dzp.data());
            std::fill(du.begin(), du.end(), 0.0);
            matvec_transpose_add(p.gru_wn, dnp.data(), du.data());
            matvec_transpose_add(p.gru_wr, drp.data(), du.data());
            matvec_transpose_add(p.gru_wz, dzp.data(), du.data());

            if (hidden != nullptr) {
                // n_pre consumed r * (U_n hidden); route both factors.
                std::vector<double>& d_un_h = dn; // reuse buffer
                for (std::size_t j = 0; j < h; ++j) d_un_h[j] = dnp[j] * r[j];
                add_outer(grads.gru_un, d_un_h.data(), hidden);
                matvec_transpose_add(p.gru_un, d_un_h.data(), dhid.data());
                add_outer(grads.gru_uz, dzp.data(), hidden);
                matvec_transpose_add(p.gru_uz, dzp.data(), dhid.data());
                add_outer(grads.gru_ur, drp.data(), hidden);
                matvec_transpose_add(p.gru_ur, drp.data(), dhid.data());
            }

            double* dprev_row = d_prev.row(i);
            for (std::size_t j = 0; j < h; ++j) {
                dprev_row[j] += du[j] + dhid[j];
                dx(i, j) = du[h + j];
            }
        }

        // Distribute message gradients along edges, then through W^k.
        d_msg_dep.zero();
        d_msg_alloc.zero();
        std::fill(touched_dep.begin(), touched_dep.end(), 0);
        std::fill(touched_alloc.begin(), touched_alloc.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* dxi = dx.row(i);
            for (const auto& nb : graph.adj[i]) {
                if (nb.type == EdgeType::Dependency) {
                    vec_add(d_msg_dep.row(nb.node), dxi, h);
                    touched_dep[nb.node] = 1;
                } else {
                    vec_add(d_msg_alloc.row(nb.node), dxi, h);
                    touched_alloc[nb.node] = 1;
                }
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (touched_dep[j]) {
                add_outer(grads.msg_w[k][0], d_msg_dep.row(j), prev.row(j));
                matvec_transpose_add(p.msg_w[k][0], d_msg_dep.row(j), d_prev.row(j));
            }
            if (touched_alloc[j]) {
                add_outer(grads.msg_w[k][1], d_msg_alloc.row(j), prev.row(j));
                matvec_transpose_add(p.msg_w[k][1], d_msg_alloc.row(j), d_prev.row(j));
            }
        }
        std::swap(d_cur, d_prev);
    }

    // Embedding.
    std::vector<double> dpre0(h);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r0 = cache.r0.row(i);
        const double* d = d_cur.row(i);
        for (std::size_t j = 0; j < h; ++j) dpre0[j] = d[j] * (1.0 - r0[j] * r0[j]);
        add_outer(grads.embed_w, dpre0.data(), graph.features[i].data());
        vec_add(grads.embed_b.row(0), dpre0.data(), h);
    }
}

// ---------------------------------------------------------------------------
// Model persistence: magic, layout version, config, shape table, row-major
// 64-bit floats.

inline constexpr char kModelMagic[8] = {'H', 'S', 'G', 'G', 'C', 'N', '0', '1'};

inline void save_model(const GgcnModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out.write(kModelMagic, sizeof(kModelMagic));
    const std::uint32_t version = 1;
    auto put_u32 = [&out](std::uint32_t v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    put_u32(version);
    put_u32(static_cast<std::uint32_t>(model.config.hidden));
    put_u32(static_cast<std::uint32_t>(model.config.rounds));
    put_u32(static_cast<std::uint32_t>(model.config.node_features));
    put_u32(static_cast<std::uint32_t>(model.config.thermal_features));
    const auto tensors = model.params.tensors();
    put_u32(static_cast<std::uint32_t>(tensors.size()));
    for (const auto& [name, m] : tensors) {
        put_u32(static_cast<std::uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        put_u32(static_cast<std::uint32_t>(m->rows));
        put_u32(static_cast<std::uint32_t>(m->cols));
        out.write(reinterpret_cast<const char*>(m->data.data()),
                  static_cast<std::streamsize>(m->data.size() * sizeof(double)));
    }
    if (!out) throw std::runtime_error("failed writing model file: " + path);
}

inline GgcnModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw std::runtime_error("not a surrogate model file: " + path);
    auto get_u32 = [&in, &path]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof(v));
        if (!in) throw std::runtime_error("truncated model file: " + path);
        return v;
    };
    if (get_u32() != 1) throw std::runtime_error("unsupported model layout version");
    GgcnConfig cfg;
    cfg.hidden = get_u32();
    cfg.rounds = get_u32();
    cfg.node_features = get_u32();
    cfg.thermal_features = get_u32();
    GgcnModel model;
    model.config = cfg;
    model.params = GgcnParams::shaped(cfg);
    const std::uint32_t count = get_u32();
    auto tensors = model.params.tensors();
    if (count != tensors.size())
        throw std::runtime_error("model tensor table mismatch in " + path);
    for (auto& [name, m] : tensors) {
        const std::uint32_t name_len = get_u32();
        std::string fname(name_len, '\0');
        in.read(fname.data(), name_len);
        const std::uint32_t rows = get_u32();
        const std::uint32_t cols = get_u32();
        if (fname != name || rows != m->rows || cols != m->cols)
            throw std::runtime_error("model shape table mismatch at tensor " + fname);
        in.read(reinterpret_cast<char*>(m->data.data()),
                static_cast<std::streamsize>(m->data.size() * sizeof(double)));
        if (!in) throw std::runtime_error("truncated model file: " + path);
    }
    return model;
}

} // namespace hunter
