#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hunter/core/rng.hpp"
#include "hunter/surrogate/adamw.hpp"
#include "hunter/surrogate/training.hpp"

using namespace hunter;

namespace {

GgcnConfig tiny_config() {
    GgcnConfig c;
    c.hidden = 8;
    return c;
}

HeteroGraph mini_graph(Rng& rng, std::size_t n_tasks = 3, std::size_t n_hosts = 2) {
    HeteroGraph g;
    g.n_tasks = n_tasks;
    g.n_hosts = n_hosts;
    g.features.resize(g.n_nodes());
    g.adj.resize(g.n_nodes());
    g.task_ids.resize(n_tasks);
    g.task_alloc.assign(n_tasks, -1);
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        for (double& v : g.features[i]) v = rng.uniform();
        g.features[i][kFeatIsHost] = i >= n_tasks ? 1.0 : 0.0;
    }
    for (std::size_t a = 0; a < n_tasks; ++a)
        for (std::size_t b = a + 1; b < n_tasks; ++b)
            g.add_edge(a, b, EdgeType::Dependency);
    for (std::size_t i = 0; i < n_tasks; ++i)
        g.set_allocation(i, static_cast<std::int32_t>(g.host_node(i % n_hosts)));
    for (std::size_t i = 0; i < n_tasks; ++i) g.task_ids[i] = i + 1;
    return g;
}

ThermalInput mini_thermal(Rng& rng, std::size_t n_hosts, std::size_t width) {
    ThermalInput t;
    t.n_hosts = n_hosts;
    t.features_per_host = width;
    t.values.resize(n_hosts * width);
    for (double& v : t.values) v = rng.uniform();
    return t;
}

// Textbook AdamW recurrence for one scalar, used as the reference trajectory.
struct ScalarAdamW {
    double lr, wd;
    double m = 0.0, v = 0.0;
    long t = 0;
    double step(double w, double g) {
        ++t;
        m = 0.9 * m + 0.1 * g;
        v = 0.999 * v + 0.001 * g * g;
        const double mh = m / (1.0 - std::pow(0.9, t));
        const double vh = v / (1.0 - std::pow(0.999, t));
        return w - lr * (mh / (std::sqrt(vh) + 1e-8) + wd * w);
    }
};

} // namespace

TEST_CASE("zero gradients with zero decay leave parameters untouched") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel model = make_model(cfg, 1);
    const GgcnParams before = model.params;
    AdamW opt(cfg, 1e-3, 0.0);
    GgcnParams zero_grads = GgcnParams::shaped(cfg);
    opt.step(model.params, zero_grads);
    opt.step(model.params, zero_grads);
    const auto a = model.params.tensors();
    const auto b = before.tensors();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].second->data == b[i].second->data);
}

TEST_CASE("weight decay is decoupled and skips bias tensors") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel model = make_model(cfg, 2);
    model.params.embed_b(0, 0) = 0.5;
    const double w_before = model.params.embed_w(0, 0);
    AdamW opt(cfg, 1e-2, 0.1);
    GgcnParams zero_grads = GgcnParams::shaped(cfg);
    opt.step(model.params, zero_grads);
    CHECK(model.params.embed_w(0, 0) ==
          Catch::Approx(w_before * (1.0 - 1e-2 * 0.1)).epsilon(1e-12));
    CHECK(model.params.embed_b(0, 0) == 0.5);
}

TEST_CASE("optimizer reproduces the scalar reference on a quadratic") {
    // Minimize (w - 3)^2 starting at w = 0 through the out_b tensor.
    const GgcnConfig cfg = tiny_config();
    GgcnModel model;
    model.config = cfg;
    model.params = GgcnParams::shaped(cfg);
    AdamW opt(cfg, 0.05, 0.0);
    ScalarAdamW ref{0.05, 0.0};
    double w_ref = 0.0;
    GgcnParams grads = GgcnParams::shaped(cfg);
    double first_loss = 9.0, last_loss = 9.0;
    for (int i = 0; i < 500; ++i) {
        const double w = model.params.out_b(0, 0);
        last_loss = (w - 3.0) * (w - 3.0);
        if (i == 0) first_loss = last_loss;
        grads.out_b(0, 0) = 2.0 * (w - 3.0);
        opt.step(model.params, grads);
        w_ref = ref.step(w_ref, 2.0 * (w_ref - 3.0));
        REQUIRE(model.params.out_b(0, 0) == Catch::Approx(w_ref).epsilon(1e-12));
    }
    CHECK(last_loss < first_loss); // descent
    CHECK(model.params.out_b(0, 0) == Catch::Approx(3.0).margin(0.2));
}

TEST_CASE("training on identical pairs converges to a constant predictor") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel model = make_model(cfg, 3);
    Rng rng(4);
    Datapoint dp;
    dp.graph = mini_graph(rng);
    dp.thermal = mini_thermal(rng, 2, cfg.thermal_features);
    dp.objective = 0.7;
    const std::vector<Datapoint> dataset(12, dp);
    // One shared sample replicated: aggressive rate is fine here.
    PretrainOptions opts;
    opts.learning_rate = 5e-3;
    opts.max_epochs = 400;
    opts.patience = 400;
    opts.batch_size = 4;
    opts.validation_fraction = 0.25;
    const auto result = pretrain(model, dataset, opts);
    CHECK(result.best_validation_mse < 1e-4);
}

TEST_CASE("early stopping restores the best snapshot") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel model = make_model(cfg, 5);
    Rng rng(6);
    std::vector<Datapoint> dataset;
    for (int i = 0; i < 24; ++i) {
        Datapoint dp;
        dp.graph = mini_graph(rng);
        dp.thermal = mini_thermal(rng, 2, cfg.thermal_features);
        dp.objective = rng.uniform(); // pure noise labels
        dataset.push_back(std::move(dp));
    }
    PretrainOptions opts;
    opts.learning_rate = 1e-2;
    opts.max_epochs = 300;
    opts.patience = 5;
    opts.batch_size = 6;
    const auto result = pretrain(model, dataset, opts);
    CHECK(result.curve.size() < opts.max_epochs); // stopped early
    // Returned parameters reproduce the best recorded validation MSE.
    std::vector<const Datapoint*> val;
    const std::size_t n_val = dataset.size() / 5;
    for (std::size_t i = dataset.size() - n_val; i < dataset.size(); ++i)
        val.push_back(&dataset[i]);
    ForwardCache cache;
    CHECK(evaluate_mse(model, val, cache) ==
          Catch::Approx(result.best_validation_mse).epsilon(1e-12));
}

TEST_CASE("empty dataset is a config error") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel model = make_model(cfg, 7);
    CHECK_THROWS_AS(pretrain(model, {}, {}), std::invalid_argument);
}

TEST_CASE("fine-tune applies exactly one optimizer step on the newest sample") {
    const GgcnConfig cfg = tiny_config();
    GgcnModel tuned = make_model(cfg, 8);
    GgcnModel manual = tuned;
    Rng rng(9);
    Datapoint dp;
    dp.graph = mini_graph(rng);
    dp.thermal = mini_thermal(rng, 2, cfg.thermal_features);
    dp.objective = 0.35;

    AdamW opt_a(cfg, 1e-4, 0.01);
    ForwardCache cache;
    fine_tune(tuned, opt_a, dp, cache);

    AdamW opt_b(cfg, 1e-4, 0.01);
    const auto lg = loss_and_gradients(manual, {&dp}, cache);
    opt_b.step(manual.params, lg.gradients);

    const auto a = tuned.params.tensors();
    const auto b = manual.params.tensors();
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].second->data == b[i].second->data);
}
