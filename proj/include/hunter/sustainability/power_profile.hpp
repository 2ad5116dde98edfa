#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hunter {

// SPEC-benchmark style load-to-watts curve. Knots are (load, watts) pairs
// with load ascending; power is piecewise-linear between knots.
struct PowerProfile {
    struct Knot {
        double load = 0.0;
        double watts = 0.0;
    };
    std::vector<Knot> points;

    void validate() const {
        if (points.size() < 2)
            throw std::invalid_argument("power profile needs at least two knots");
        if (points.front().load != 0.0 || points.back().load != 1.0)
            throw std::invalid_argument("power profile must cover load 0 and load 1");
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].load <= points[i - 1].load)
                throw std::invalid_argument("power profile loads must be strictly ascending");
            if (points[i].watts < points[i - 1].watts)
                throw std::invalid_argument("power profile must be non-decreasing in load");
        }
    }

    double max_watts() const { return points.back().watts; }
};

inline PowerProfile make_profile(const std::vector<double>& watts_at_uniform_loads) {
    PowerProfile p;
    const std::size_t n = watts_at_uniform_loads.size();
    if (n < 2) throw std::invalid_argument("profile needs at least two points");
    p.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        p.points.push_back({static_cast<double>(i) / static_cast<double>(n - 1),
                            watts_at_uniform_loads[i]});
    p.validate();
    return p;
}

// Piecewise-linear interpolation; exact at knots.
inline double power_at_load(const PowerProfile& profile, double load) {
    if (load < 0.0 || load > 1.0)
        throw std::invalid_argument("load outside [0,1]");
    const auto& pts = profile.points;
    auto hi = std::lower_bound(pts.begin(), pts.end(), load,
                               [](const PowerProfile::Knot& k, double v) { return k.load < v; });
    if (hi == pts.begin()) return hi->watts;
    if (hi == pts.end()) return pts.back().watts;
    if (hi->load == load) return hi->watts;
    const auto lo = hi - 1;
    const double t = (load - lo->load) / (hi->load - lo->load);
    return lo->watts + t * (hi->watts - lo->watts);
}

// IPS delivered per watt at the given load; 0 at load 0 by definition.
inline double performance_to_power(const PowerProfile& profile, double ips_capacity,
                                   double load) {
    if (load == 0.0) return 0.0;
    return load * ips_capacity / power_at_load(profile, load);
}

// CSV format: header "load,power_watts", one knot per row, load ascending.
inline PowerProfile load_power_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open power profile: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty power profile: " + path);
    if (line != "load,power_watts")
        throw std::runtime_error("bad power profile header in " + path + ": " + line);
    PowerProfile p;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw std::runtime_error(path + ": malformed row " + std::to_string(row));
        p.points.push_back({std::stod(a), std::stod(b)});
    }
    p.validate();
    return p;
}

} // namespace hunter
