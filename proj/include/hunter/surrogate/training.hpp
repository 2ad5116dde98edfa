#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hunter/core/rng.hpp"
#include "hunter/surrogate/adamw.hpp"
#include "hunter/surrogate/ggcn.hpp"

namespace hunter {

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One labeled observation: the monitored [S, D] graph and thermal vector of an
// interval together with the objective score the interval actually achieved.
struct Datapoint {
    HeteroGraph graph;
    ThermalInput thermal;
    double objective = 0.0;
};

struct LossAndGradients {
    double mse = 0.0;
    GgcnParams gradients;
};

// Mean squared error over the batch plus gradients for every tensor.
inline LossAndGradients loss_and_gradients(const GgcnModel& model,
                                           const std::vector<const Datapoint*>& batch,
                                           ForwardCache& cache) {
    if (batch.empty()) throw std::invalid_argument("empty training batch");
    LossAndGradients out;
    out.gradients = GgcnParams::shaped(model.config);
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (const Datapoint* dp : batch) {
        if (dp->objective < 0.0 || dp->objective > 1.0)
            throw std::invalid_argument("objective outside [0,1]");
        const double predicted = forward(model, dp->graph, dp->thermal, cache);
        const double err = predicted - dp->objective;
        out.mse += err * err * inv;
        backward(model, dp->graph, dp->thermal, cache, 2.0 * err * inv, out.gradients);
    }
    if (!std::isfinite(out.mse))
        throw TrainingError("non-finite loss; aborting with diagnostics: batch size " +
                            std::to_string(batch.size()));
    return out;
}

inline double evaluate_mse(const GgcnModel& model,
                           const std::vector<const Datapoint*>& set, ForwardCache& cache) {
    if (set.empty()) return 0.0;
    double mse = 0.0;
    for (const Datapoint* dp : set) {
        const double err = forward(model, dp->graph, dp->thermal, cache) - dp->objective;
        mse += err * err;
    }
    return mse / static_cast<double>(set.size());
}

struct PretrainOptions {
    double validation_fraction = 0.2;
    std::size_t batch_size = 32;
    std::size_t max_epochs = 120;
    std::size_t patience = 10;
    double learning_rate = 1e-4;
    double weight_decay = 0.01;
    std::uint64_t shuffle_seed = 7;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double train_mse = 0.0;
    double validation_mse = 0.0;
};

struct PretrainResult {
    std::vector<EpochRecord> curve;
    double initial_validation_mse = 0.0;
    double best_validation_mse = 0.0;
    std::size_t best_epoch = 0;
};

// Minibatch AdamW with early stopping on a held-out split; restores the best
// validation snapshot before returning.
inline PretrainResult pretrain(GgcnModel& model, const std::vector<Datapoint>& dataset,
                               const PretrainOptions& opts = {}) {
    if (dataset.empty()) throw std::invalid_argument("empty pretraining dataset");
    if (opts.validation_fraction <= 0.0 || opts.validation_fraction >= 1.0)
        throw std::invalid_argument("validation fraction must be in (0,1)");

    // Deterministic split: last fraction of the (already chronological)
    // dataset is held out.
    const std::size_t n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(opts.validation_fraction *
                                    static_cast<double>(dataset.size())));
    const std::size_t n_train = dataset.size() - n_val;
    if (n_train == 0) throw std::invalid_argument("dataset too small to split");

    std::vector<const Datapoint*> train(n_train), val(n_val);
    for (std::size_t i = 0; i < n_train; ++i) train[i] = &dataset[i];
    for (std::size_t i = 0; i < n_val; ++i) val[i] = &dataset[n_train + i];

    ForwardCache cache;
    AdamW optimizer(model.config, opts.learning_rate, opts.weight_decay);

    PretrainResult result;
    result.initial_validation_mse = evaluate_mse(model, val, cache);
    result.best_validation_mse = result.initial_validation_mse;

    GgcnParams best = model.params;
    std::size_t since_best = 0;
    Rng shuffle_rng(mix_seed(opts.shuffle_seed, 0xE60C));
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 1; epoch <= opts.max_epochs; ++epoch) {
        // Fisher-Yates with the pinned RNG.
        for (std::size_t i = n_train - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(
                shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i)));
            std::swap(order[i], order[j]);
        }
        double train_mse = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n_train; start += opts.batch_size) {
            const std::size_t end = std::min(n_train, start + opts.batch_size);
            std::vector<const Datapoint*> batch;
            batch.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) batch.push_back(train[order[i]]);
            auto lg = loss_and_gradients(model, batch, cache);
            optimizer.step(model.params, lg.gradients);
            train_mse += lg.mse;
            ++batches;
        }
        train_mse /= static_cast<double>(batches);
        const double val_mse = evaluate_mse(model, val, cache);
        result.curve.push_back({epoch, train_mse, val_mse});

        if (val_mse < result.best_validation_mse) {
            result.best_validation_mse = val_mse;
            result.best_epoch = epoch;
            best = model.params;
            since_best = 0;
        } else if (++since_best >= opts.patience) {
            break;
        }
    }
    model.params = std::move(best);
    return result;
}

// One optimizer step on the single newest datapoint.
inline double fine_tune(GgcnModel& model, AdamW& optimizer, const Datapoint& datapoint,
                        ForwardCache& cache) {
    const std::vector<const Datapoint*> batch{&datapoint};
    auto lg = loss_and_gradients(model, batch, cache);
    optimizer.step(model.params, lg.gradients);
    return lg.mse;
}

} // namespace hunter
