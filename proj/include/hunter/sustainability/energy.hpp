#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hunter {

// Parameters of the computing-side energy model. Per-core dynamic power is
//   E_dynamic = (C V^2 f + mu1 U + mu2 U^2) / 2
// i.e. the mean of the linear (capacitive) and non-linear (utilization) terms,
// and each core additionally draws idle_core_power at all times.
struct EnergyParams {
    double capacitance_f = 0.0;     // C
    double voltage_v = 0.0;         // V
    double frequency_hz = 0.0;      // f
    double mu1 = 0.0;               // W per utilization unit
    double mu2 = 0.0;               // W per squared utilization unit
    double idle_core_power_w = 0.0;

    double storage_read_w = 0.0;  // at full read activity
    double storage_write_w = 0.0; // at full write activity
    double storage_idle_w = 0.0;

    double memory_sram_w = 0.0;
    double memory_dram_w = 0.0;

    double network_router_w = 0.0;
    double network_switches_w = 0.0;
    double network_gateways_w = 0.0;
    double network_lan_cards_w = 0.0;

    double motherboard_w = 0.0;
    std::vector<double> connector_w; // one entry per port frequency in F

    void validate() const {
        const double vals[] = {capacitance_f, voltage_v, frequency_hz, mu1, mu2,
                               idle_core_power_w, storage_read_w, storage_write_w,
                               storage_idle_w, memory_sram_w, memory_dram_w,
                               network_router_w, network_switches_w, network_gateways_w,
                               network_lan_cards_w, motherboard_w};
        for (double v : vals)
            if (v < 0.0) throw std::invalid_argument("energy parameters must be non-negative");
        for (double v : connector_w)
            if (v < 0.0) throw std::invalid_argument("energy parameters must be non-negative");
    }

    double dynamic_core_power(double util) const {
        const double linear = capacitance_f * voltage_v * voltage_v * frequency_hz;
        const double nonlinear = mu1 * util + mu2 * util * util;
        return 0.5 * (linear + nonlinear);
    }

    // Peak dynamic power of a host with `cores` cores, used to normalize the
    // datacenter heat output.
    double max_dynamic_power(std::size_t cores) const {
        return static_cast<double>(cores) * dynamic_core_power(1.0);
    }
};

// Idle plus dynamic consumption summed over all cores, integrated over dt.
inline double processor_energy(const EnergyParams& params,
                               const std::vector<double>& core_utils, double dt_s) {
    double power = 0.0;
    for (double u : core_utils) {
        if (u < 0.0 || u > 1.0)
            throw std::invalid_argument("core utilization outside [0,1]");
        power += params.dynamic_core_power(u) + params.idle_core_power_w;
    }
    return power * dt_s;
}

// Read/write/network activity of a host over one interval, as fractions of
// full activity.
struct ComponentActivity {
    double storage_read = 0.0;
    double storage_write = 0.0;

    void validate() const {
        if (storage_read < 0.0 || storage_read > 1.0 || storage_write < 0.0 ||
            storage_write > 1.0)
            throw std::invalid_argument("activity fractions must lie in [0,1]");
    }
};

// Storage, memory, network and peripheral consumption. Only the storage
// read/write terms scale with activity; the remaining components are modeled
// as constant draws.
inline double component_energy(const EnergyParams& params, const ComponentActivity& activity,
                               double dt_s) {
    activity.validate();
    const double storage = activity.storage_read * params.storage_read_w +
                           activity.storage_write * params.storage_write_w +
                           params.storage_idle_w;
    const double memory = params.memory_sram_w + params.memory_dram_w;
    const double network = params.network_router_w + params.network_switches_w +
                           params.network_gateways_w + params.network_lan_cards_w;
    double extra = params.motherboard_w;
    for (double w : params.connector_w) extra += w;
    return (storage + memory + network + extra) * dt_s;
}

// Cooling-side parameters. Duty is linear in normalized datacenter heat,
// clamped to [0,1]; heat_reference_w is the heat output at which the cooling
// plant saturates.
struct CoolingParams {
    double ac_w = 0.0;
    double compressor_w = 0.0;
    double fan_w = 0.0;
    double pump_w = 0.0;
    double heat_reference_w = 1.0;

    void validate() const {
        if (ac_w < 0.0 || compressor_w < 0.0 || fan_w < 0.0 || pump_w < 0.0)
            throw std::invalid_argument("cooling powers must be non-negative");
        if (heat_reference_w <= 0.0)
            throw std::invalid_argument("heat reference must be positive");
    }

    double duty(double dc_heat_w) const {
        return std::clamp(dc_heat_w / heat_reference_w, 0.0, 1.0);
    }

    double component_sum() const { return ac_w + compressor_w + fan_w + pump_w; }
};

inline double cooling_energy(const CoolingParams& params, double dc_heat_w, double dt_s) {
    if (dc_heat_w < 0.0) throw std::invalid_argument("datacenter heat must be non-negative");
    return params.duty(dc_heat_w) * params.component_sum() * dt_s;
}

} // namespace hunter
