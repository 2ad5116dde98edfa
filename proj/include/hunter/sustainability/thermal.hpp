#pragma once

#include <cmath>
#include <stdexcept>

namespace hunter {

// RC thermal model plus a CRAC inlet coupling. The temperature update is
//   T_cpu = P * R + T_inlet + T_initial * exp(-R * C)
// applied as printed, with the exponent a fixed per-interval decay. It is a
// monotone heat proxy, not a calibrated physical model.
struct ThermalParams {
    double resistance_k_per_w = 0.5; // R
    double heat_capacity_j_per_k = 0.03; // C
    double ambient_c = 25.0;
    // CRAC inlet: ambient + kappa * (datacenter dynamic power / max power).
    double crac_kappa_c = 10.0;

    void validate() const {
        if (resistance_k_per_w <= 0.0 || heat_capacity_j_per_k <= 0.0)
            throw std::invalid_argument("thermal R and C must be positive");
        if (crac_kappa_c < 0.0)
            throw std::invalid_argument("CRAC kappa must be non-negative");
    }

    double crac_inlet_c(double heat_fraction) const {
        if (heat_fraction < 0.0) heat_fraction = 0.0;
        if (heat_fraction > 1.0) heat_fraction = 1.0;
        return ambient_c + crac_kappa_c * heat_fraction;
    }
};

inline double host_temperature(const ThermalParams& params, double dynamic_power_w,
                               double inlet_c, double initial_c) {
    if (dynamic_power_w < 0.0)
        throw std::invalid_argument("dynamic power must be non-negative");
    const double decay =
        std::exp(-params.resistance_k_per_w * params.heat_capacity_j_per_k);
    return dynamic_power_w * params.resistance_k_per_w + inlet_c + initial_c * decay;
}

} // namespace hunter
