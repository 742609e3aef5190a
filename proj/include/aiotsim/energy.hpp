#pragma once

#include <string>
#include <vector>

namespace aiot {

/// Voltage/capacitance of one device's energy store.
struct CapacitorState {
    double voltage = 0.0;      // V, kept in [0, v_max] by updates
    double capacitance = 1.0;  // F, fixed over a run
};

// Table I hardware profile. Currents in A, times in s.
struct PowerProfile {
    double supply_voltage = 3.3;
    double v_min = 1.8;
    double v_max = 3.3;               // clamp, defaults to supply level
    double leakage_current = 0.03e-3;
    double sleep_current = 0.02e-3;   // includes the WUR standby draw
    double mcu_active_current = 0.091e-3;
    double tx_current = 20.65e-3;
    double sensor_i2c_time = 0.000325;
    double sensor_meas_time = 0.0055;
    double tx_time = 0.005;

    void validate() const;  // throws std::invalid_argument
};

enum class RaPhase { SenseI2C, SenseMeas, Tx };

struct OperationalState {
    enum class Tag { Idle, Ra } tag = Tag::Idle;
    RaPhase phase = RaPhase::SenseI2C;  // meaningful only in Ra

    static OperationalState idle() { return {Tag::Idle, RaPhase::SenseI2C}; }
    static OperationalState ra(RaPhase p) { return {Tag::Ra, p}; }
};

// Constant current or a step-hold trace of (time, current) samples.
class HarvestProfile {
public:
    static HarvestProfile constant(double current_amps);
    static HarvestProfile trace(std::vector<std::pair<double, double>> samples);
    // Two-column CSV (time_s, current_A), header row required.
    static HarvestProfile from_csv(const std::string& path);

    bool is_constant() const { return constant_; }
    double constant_current() const { return value_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    double current_at(double t) const;

private:
    bool constant_ = true;
    double value_ = 0.0;
    std::vector<std::pair<double, double>> samples_;
};

// Total load current for a state, leakage always included.
double load_current(const PowerProfile& profile, const OperationalState& state);

// Eq.-style equivalent load resistance V_supply / I_c; rejects I_c <= 0.
double equivalent_resistance(const PowerProfile& profile, const OperationalState& state);

// RC voltage update over dt with constant harvest current, clamped to
// [0, v_max]: Ih*Req*(1 - e^(-dt/(Req*C))) + V0*e^(-dt/(Req*C)).
double voltage_after(const CapacitorState& cap, const PowerProfile& profile,
                     const OperationalState& state, double harvest_current, double dt);

// Same update but following a (possibly time-varying) harvest profile from
// t0 to t1, split at trace breakpoints so each segment sees constant Ih.
double voltage_after_profile(const CapacitorState& cap, const PowerProfile& profile,
                             const OperationalState& state, const HarvestProfile& harvest,
                             double t0, double t1);

inline double stored_energy(const CapacitorState& cap) {
    return 0.5 * cap.capacitance * cap.voltage * cap.voltage;
}

} // namespace aiot
