#pragma once

#include <cmath>
#include <stdexcept>

#include "hunter/surrogate/ggcn.hpp"

namespace hunter {

// Adam with decoupled weight decay. Moments are shaped like the parameters;
// decay is not applied to bias tensors.
struct AdamW {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double weight_decay = 0.01;

    GgcnParams m, v;
    long step_count = 0;

    explicit AdamW(const GgcnConfig& config, double lr = 1e-4, double decay = 0.01)
        : learning_rate(lr), weight_decay(decay) {
        m = GgcnParams::shaped(config);
        v = GgcnParams::shaped(config);
    }

    void step(GgcnParams& params, const GgcnParams& grads) {
        ++step_count;
        const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
        const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
        auto pt = params.tensors();
        auto gt = grads.tensors();
        auto mt = m.tensors();
        auto vt = v.tensors();
        for (std::size_t t = 0; t < pt.size(); ++t) {
            Matrix& p = *pt[t].second;
            const Matrix& g = *gt[t].second;
            Matrix& mm = *mt[t].second;
            Matrix& vv = *vt[t].second;
            if (g.size() != p.size()) throw std::logic_error("gradient shape mismatch");
            const bool decay_this = !is_bias_tensor(pt[t].first);
            for (std::size_t i = 0; i < p.data.size(); ++i) {
                mm.data[i] = beta1 * mm.data[i] + (1.0 - beta1) * g.data[i];
                vv.data[i] = beta2 * vv.data[i] + (1.0 - beta2) * g.data[i] * g.data[i];
                const double m_hat = mm.data[i] / bc1;
                const double v_hat = vv.data[i] / bc2;
                double update = m_hat / (std::sqrt(v_hat) + epsilon);
                if (decay_this) update += weight_decay * p.data[i];
                p.data[i] -= learning_rate * update;
            }
        }
    }
};

} // namespace hunter
