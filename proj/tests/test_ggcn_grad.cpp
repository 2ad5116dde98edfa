#include <catch2/catch_amalgamated.hpp>

#include "hunter/core/rng.hpp"
#include "hunter/surrogate/ggcn.hpp"
#include "hunter/surrogate/training.hpp"

using namespace hunter;

namespace {

// The canonical gradient-check fixture: two tasks in one job, both placed,
// two hosts.
HeteroGraph two_by_two_graph(Rng& rng) {
    HeteroGraph g;
    g.n_tasks = 2;
    g.n_hosts = 2;
    g.features.resize(4);
    g.adj.resize(4);
    g.task_ids = {1, 2};
    g.task_alloc.assign(2, -1);
    for (auto& f : g.features)
        for (double& v : f) v = rng.uniform(0.05, 0.95);
    g.features[0][kFeatIsHost] = g.features[1][kFeatIsHost] = 0.0;
    g.features[2][kFeatIsHost] = g.features[3][kFeatIsHost] = 1.0;
    g.add_edge(0, 1, EdgeType::Dependency);
    g.set_allocation(0, 2);
    g.set_allocation(1, 3);
    return g;
}

ThermalInput thermal_for(Rng& rng, std::size_t n_hosts, std::size_t width) {
    ThermalInput t;
    t.n_hosts = n_hosts;
    t.features_per_host = width;
    t.values.resize(n_hosts * width);
    for (double& v : t.values) v = rng.uniform(0.05, 0.95);
    return t;
}

struct GradCheckResult {
    double worst_rel = 0.0;
    std::string worst_tensor;
    std::size_t checked = 0;
};

// Central finite differences at h=1e-5 against the analytic gradients of the
// raw output. sample_stride > 1 checks a deterministic subset per tensor.
GradCheckResult gradient_check(GgcnModel& model, const HeteroGraph& g,
                               const ThermalInput& t, std::size_t sample_stride) {
    const double h = 1e-5;
    ForwardCache cache;
    forward(model, g, t, cache);
    GgcnParams grads = GgcnParams::shaped(model.config);
    backward(model, g, t, cache, 1.0, grads);

    GradCheckResult res;
    auto tensors = model.params.tensors();
    auto gtensors = grads.tensors();
    for (std::size_t ti = 0; ti < tensors.size(); ++ti) {
        Matrix& m = *tensors[ti].second;
        const Matrix& gm = *gtensors[ti].second;
        for (std::size_t i = 0; i < m.data.size(); i += sample_stride) {
            const double saved = m.data[i];
            m.data[i] = saved + h;
            ForwardCache c1;
            const double up = forward(model, g, t, c1);
            m.data[i] = saved - h;
            const double down = forward(model, g, t, c1);
            m.data[i] = saved;
            const double numeric = (up - down) / (2.0 * h);
            const double analytic = gm.data[i];
            ++res.checked;
            if (std::abs(numeric) < 1e-7 && std::abs(analytic) < 1e-7) continue;
            const double rel = std::abs(numeric - analytic) /
                               std::max(std::abs(numeric), std::abs(analytic));
            if (rel > res.worst_rel) {
                res.worst_rel = rel;
                res.worst_tensor = tensors[ti].first;
            }
        }
    }
    return res;
}

} // namespace

TEST_CASE("every parameter of a narrow model passes finite differences") {
    GgcnConfig cfg;
    cfg.hidden = 8;
    GgcnModel model = make_model(cfg, 42);
    Rng rng(11);
    const HeteroGraph g = two_by_two_graph(rng);
    const ThermalInput t = thermal_for(rng, 2, cfg.thermal_features);
    const auto res = gradient_check(model, g, t, 1);
    INFO("worst tensor: " << res.worst_tensor << " checked " << res.checked);
    CHECK(res.worst_rel < 1e-4);
    CHECK(res.checked > 1000);
}

TEST_CASE("full-width model passes sampled finite differences") {
    GgcnConfig cfg; // 64 wide, 4 rounds
    GgcnModel model = make_model(cfg, 43);
    Rng rng(12);
    const HeteroGraph g = two_by_two_graph(rng);
    const ThermalInput t = thermal_for(rng, 2, cfg.thermal_features);
    const auto res = gradient_check(model, g, t, 257);
    INFO("worst tensor: " << res.worst_tensor << " checked " << res.checked);
    CHECK(res.worst_rel < 1e-4);
}

TEST_CASE("gradients flow into every tensor, attention path included") {
    GgcnConfig cfg;
    cfg.hidden = 8;
    GgcnModel model = make_model(cfg, 44);
    Rng rng(13);
    const HeteroGraph g = two_by_two_graph(rng);
    const ThermalInput t = thermal_for(rng, 2, cfg.thermal_features);
    ForwardCache cache;
    forward(model, g, t, cache);
    GgcnParams grads = GgcnParams::shaped(cfg);
    backward(model, g, t, cache, 1.0, grads);
    for (const auto& [name, tensor] : grads.tensors()) {
        double norm = 0.0;
        for (double v : tensor->data) norm += v * v;
        INFO(name);
        CHECK(norm > 0.0);
    }
}

TEST_CASE("perfect prediction yields zero loss and zero gradients") {
    GgcnConfig cfg;
    cfg.hidden = 8;
    GgcnModel model = make_model(cfg, 45);
    Rng rng(14);
    Datapoint dp;
    dp.graph = two_by_two_graph(rng);
    dp.thermal = thermal_for(rng, 2, cfg.thermal_features);
    ForwardCache cache;
    dp.objective = forward(model, dp.graph, dp.thermal, cache);
    const auto lg = loss_and_gradients(model, {&dp}, cache);
    CHECK(lg.mse == 0.0);
    for (const auto& [name, tensor] : lg.gradients.tensors())
        for (double v : tensor->data) CHECK(v == 0.0);
}

TEST_CASE("batch loss is the mean of singleton losses") {
    GgcnConfig cfg;
    cfg.hidden = 8;
    GgcnModel model = make_model(cfg, 46);
    Rng rng(15);
    Datapoint a, b;
    a.graph = two_by_two_graph(rng);
    a.thermal = thermal_for(rng, 2, cfg.thermal_features);
    a.objective = 0.2;
    b.graph = two_by_two_graph(rng);
    b.thermal = thermal_for(rng, 2, cfg.thermal_features);
    b.objective = 0.9;
    ForwardCache cache;
    const double la = loss_and_gradients(model, {&a}, cache).mse;
    const double lb = loss_and_gradients(model, {&b}, cache).mse;
    const double lab = loss_and_gradients(model, {&a, &b}, cache).mse;
    CHECK(lab == Catch::Approx(0.5 * (la + lb)).epsilon(1e-12));
}

TEST_CASE("targets outside [0,1] and poisoned weights are rejected") {
    GgcnConfig cfg;
    cfg.hidden = 8;
    GgcnModel model = make_model(cfg, 47);
    Rng rng(16);
    Datapoint dp;
    dp.graph = two_by_two_graph(rng);
    dp.thermal = thermal_for(rng, 2, cfg.thermal_features);
    dp.objective = 1.5;
    ForwardCache cache;
    CHECK_THROWS_AS(loss_and_gradients(model, {&dp}, cache), std::invalid_argument);

    dp.objective = 0.5;
    model.params.out_b(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(loss_and_gradients(model, {&dp}, cache), TrainingError);
}
