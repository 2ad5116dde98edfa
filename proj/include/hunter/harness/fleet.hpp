#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hunter/core/state.hpp"
#include "hunter/core/types.hpp"

namespace hunter {

// Azure-style host classes. Capacities follow the B2s/B4ms/B8ms ladder
// (2/4/8 cores with 4/16/32 GB RAM); the power curves are SPEC-benchmark
// shaped with the efficiency sweet spot in the 70-80% load band, and the
// larger machines deliver more instructions per watt.
struct HostClassSpec {
    std::string name;
    std::size_t count = 0;
    std::size_t cores = 1;
    double cpu_capacity_ips = 0.0;
    double ram_capacity_mb = 0.0;
    double disk_capacity_mb = 0.0;
    double bandwidth_capacity_mbps = 0.0;
    double price_per_hour = 0.0;
    bool is_private = true;
    double network_latency_s = 0.0;
    PowerProfile power_profile;
    EnergyParams energy;
};

inline HostClassSpec b2s_class(std::size_t count, bool is_private) {
    HostClassSpec s;
    s.name = "B2s";
    s.count = count;
    s.cores = 2;
    s.cpu_capacity_ips = 4000.0;
    s.ram_capacity_mb = 4096.0;
    s.disk_capacity_mb = 65536.0;
    s.bandwidth_capacity_mbps = 100.0;
    s.price_per_hour = 0.0416;
    s.is_private = is_private;
    s.network_latency_s = is_private ? 0.001 : 0.05;
    s.power_profile = make_profile(
        {45.0, 51.0, 56.5, 61.5, 66.5, 72.0, 78.5, 86.0, 95.5, 108.0, 124.0});
    EnergyParams& e = s.energy;
    e.capacitance_f = 1e-9;
    e.voltage_v = 1.2;
    e.frequency_hz = 2.0e9;
    e.mu1 = 50.0;
    e.mu2 = 26.12;
    e.idle_core_power_w = 10.0;
    e.storage_read_w = 4.0;
    e.storage_write_w = 5.0;
    e.storage_idle_w = 5.0;
    e.memory_sram_w = 2.0;
    e.memory_dram_w = 5.0;
    e.network_router_w = 2.0;
    e.network_switches_w = 2.0;
    e.network_gateways_w = 1.5;
    e.network_lan_cards_w = 1.5;
    e.motherboard_w = 5.0;
    e.connector_w = {0.5, 0.5};
    return s;
}

inline HostClassSpec b4ms_class(std::size_t count, bool is_private) {
    HostClassSpec s;
    s.name = "B4ms";
    s.count = count;
    s.cores = 4;
    s.cpu_capacity_ips = 8000.0;
    s.ram_capacity_mb = 16384.0;
    s.disk_capacity_mb = 131072.0;
    s.bandwidth_capacity_mbps = 200.0;
    s.price_per_hour = 0.166;
    s.is_private = is_private;
    s.network_latency_s = is_private ? 0.001 : 0.05;
    s.power_profile = make_profile(
        {78.0, 88.0, 97.0, 106.0, 115.0, 125.0, 136.5, 150.0, 167.0, 189.0, 216.0});
    EnergyParams& e = s.energy;
    e.capacitance_f = 1e-9;
    e.voltage_v = 1.15;
    e.frequency_hz = 2.2e9;
    e.mu1 = 46.0;
    e.mu2 = 20.09;
    e.idle_core_power_w = 12.0;
    e.storage_read_w = 5.0;
    e.storage_write_w = 6.0;
    e.storage_idle_w = 6.0;
    e.memory_sram_w = 3.0;
    e.memory_dram_w = 6.0;
    e.network_router_w = 2.5;
    e.network_switches_w = 2.5;
    e.network_gateways_w = 2.0;
    e.network_lan_cards_w = 2.0;
    e.motherboard_w = 5.0;
    e.connector_w = {0.5, 0.5};
    return s;
}

inline HostClassSpec b8ms_class(std::size_t count, bool is_private) {
    HostClassSpec s;
    s.name = "B8ms";
    s.count = count;
    s.cores = 8;
    s.cpu_capacity_ips = 16000.0;
    s.ram_capacity_mb = 32768.0;
    s.disk_capacity_mb = 262144.0;
    s.bandwidth_capacity_mbps = 400.0;
    s.price_per_hour = 0.333;
    s.is_private = is_private;
    s.network_latency_s = is_private ? 0.001 : 0.05;
    s.power_profile = make_profile(
        {130.0, 146.0, 161.0, 176.0, 191.0, 208.0, 227.0, 249.0, 277.0, 313.0, 358.0});
    EnergyParams& e = s.energy;
    e.capacitance_f = 1e-9;
    e.voltage_v = 1.1;
    e.frequency_hz = 2.5e9;
    e.mu1 = 40.0;
    e.mu2 = 13.975;
    e.idle_core_power_w = 12.0;
    e.storage_read_w = 6.0;
    e.storage_write_w = 7.0;
    e.storage_idle_w = 8.0;
    e.memory_sram_w = 4.0;
    e.memory_dram_w = 8.0;
    e.network_router_w = 3.0;
    e.network_switches_w = 3.0;
    e.network_gateways_w = 2.0;
    e.network_lan_cards_w = 2.0;
    e.motherboard_w = 2.0;
    e.connector_w = {1.0, 1.0};
    return s;
}

// The 10-host layout: a private LAN segment of four B2s and two B4ms plus a
// public segment of two B4ms and two B8ms. `scale` multiplies every class
// count (scale 5 gives the 50-host fleet).
inline std::vector<HostClassSpec> default_fleet_classes(std::size_t scale = 1) {
    if (scale == 0) throw std::invalid_argument("fleet scale must be at least 1");
    return {b2s_class(4 * scale, true), b4ms_class(2 * scale, true),
            b4ms_class(2 * scale, false), b8ms_class(2 * scale, false)};
}

inline std::vector<Host> build_fleet(const std::vector<HostClassSpec>& classes) {
    std::vector<Host> hosts;
    HostId next = 0;
    for (const auto& spec : classes) {
        for (std::size_t i = 0; i < spec.count; ++i) {
            Host h;
            h.id = next++;
            h.host_class = spec.name;
            h.cores = spec.cores;
            h.cpu_capacity_ips = spec.cpu_capacity_ips;
            h.ram_capacity_mb = spec.ram_capacity_mb;
            h.disk_capacity_mb = spec.disk_capacity_mb;
            h.bandwidth_capacity_mbps = spec.bandwidth_capacity_mbps;
            h.power_profile = spec.power_profile;
            h.energy = spec.energy;
            h.price_per_hour = spec.price_per_hour;
            h.is_private = spec.is_private;
            h.network_latency_s = spec.network_latency_s;
            hosts.push_back(std::move(h));
        }
    }
    if (hosts.empty()) throw std::invalid_argument("fleet is empty");
    return hosts;
}

// Cooling plant saturating at the fleet's peak dynamic heat output.
inline CoolingParams default_cooling(const std::vector<Host>& fleet) {
    CoolingParams c;
    c.ac_w = 500.0;
    c.compressor_w = 300.0;
    c.fan_w = 100.0;
    c.pump_w = 100.0;
    c.heat_reference_w = 0.0;
    for (const auto& h : fleet) c.heat_reference_w += h.energy.max_dynamic_power(h.cores);
    if (c.heat_reference_w <= 0.0) c.heat_reference_w = 1.0;
    return c;
}

} // namespace hunter
