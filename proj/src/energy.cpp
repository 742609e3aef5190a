#include "aiotsim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aiot {

void PowerProfile::validate() const {
    auto positive = [](double x, const char* what) {
        if (!(x > 0.0))
            throw std::invalid_argument(std::string(what) + " must be > 0");
    };
    positive(supply_voltage, "supply_voltage");
    positive(leakage_current, "leakage_current");
    positive(sleep_current, "sleep_current");
    positive(mcu_active_current, "mcu_active_current");
    positive(tx_current, "tx_current");
    positive(sensor_i2c_time, "sensor_i2c_time");
    positive(sensor_meas_time, "sensor_meas_time");
    positive(tx_time, "tx_time");
    if (!(v_min > 0.0 && v_min < supply_voltage))
        throw std::invalid_argument("v_min must satisfy 0 < v_min < supply_voltage");
    if (!(v_max >= v_min))
        throw std::invalid_argument("v_max must be >= v_min");
}

HarvestProfile HarvestProfile::constant(double current_amps) {
    if (current_amps < 0.0)
        throw std::invalid_argument("harvest current must be >= 0");
    HarvestProfile p;
    p.constant_ = true;
    p.value_ = current_amps;
    return p;
}

HarvestProfile HarvestProfile::trace(std::vector<std::pair<double, double>> samples) {
    if (samples.empty())
        throw std::invalid_argument("harvest trace must not be empty");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second < 0.0)
            throw std::invalid_argument("harvest trace currents must be >= 0");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("harvest trace times must be strictly increasing");
    }
    HarvestProfile p;
    p.constant_ = false;
    p.samples_ = std::move(samples);
    return p;
}

HarvestProfile HarvestProfile::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open harvest trace: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("harvest trace is empty: " + path);
    // header row required
    std::vector<std::pair<double, double>> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string t_str, i_str;
        if (!std::getline(ss, t_str, ',') || !std::getline(ss, i_str, ','))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected two columns (time_s, current_A)");
        try {
            samples.emplace_back(std::stod(t_str), std::stod(i_str));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed number");
        }
    }
    return trace(std::move(samples));
}

double HarvestProfile::current_at(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("harvest lookup time must be >= 0");
    if (constant_) return value_;
    // step-hold: the sample in effect at t; before the first sample, hold it back
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const auto& s) { return v < s.first; });
    if (it == samples_.begin()) return it->second;
    return std::prev(it)->second;
}

double load_current(const PowerProfile& profile, const OperationalState& state) {
    if (state.tag == OperationalState::Tag::Idle)
        return profile.sleep_current + profile.leakage_current;
    switch (state.phase) {
        case RaPhase::SenseI2C:
        case RaPhase::SenseMeas:
            return profile.mcu_active_current + profile.leakage_current;
        case RaPhase::Tx:
            return profile.tx_current + profile.leakage_current;
    }
    return profile.leakage_current;
}

double equivalent_resistance(const PowerProfile& profile, const OperationalState& state) {
    const double ic = load_current(profile, state);
    if (!(ic > 0.0))
        throw std::invalid_argument("load current must be > 0");
    return profile.supply_voltage / ic;
}

double voltage_after(const CapacitorState& cap, const PowerProfile& profile,
                     const OperationalState& state, double harvest_current, double dt) {
    if (dt < 0.0)
        throw std::invalid_argument("dt must be >= 0");
    if (harvest_current < 0.0)
        throw std::invalid_argument("harvest current must be >= 0");
    const double req = equivalent_resistance(profile, state);
    const double decay = std::exp(-dt / (req * cap.capacitance));
    const double v = harvest_current * req * (1.0 - decay) + cap.voltage * decay;
    return std::clamp(v, 0.0, profile.v_max);
}

double voltage_after_profile(const CapacitorState& cap, const PowerProfile& profile,
                             const OperationalState& state, const HarvestProfile& harvest,
                             double t0, double t1) {
    if (t1 < t0)
        throw std::invalid_argument("interval end precedes start");
    CapacitorState c = cap;
    if (harvest.is_constant()) {
        c.voltage = voltage_after(c, profile, state, harvest.constant_current(), t1 - t0);
        return c.voltage;
    }
    // advance piecewise so each segment sees a constant harvest current
    double t = t0;
    const auto& samples = harvest.samples();
    auto it = std::upper_bound(samples.begin(), samples.end(), t0,
                               [](double v, const auto& s) { return v < s.first; });
    while (t < t1) {
        const double seg_end = (it == samples.end()) ? t1 : std::min(t1, it->first);
        c.voltage = voltage_after(c, profile, state, harvest.current_at(t), seg_end - t);
        t = seg_end;
        if (it != samples.end() && t >= it->first) ++it;
    }
    return c.voltage;
}

} // namespace aiot
