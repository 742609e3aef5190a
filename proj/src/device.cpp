#include "aiotsim/device.hpp"

#include <stdexcept>

namespace aiot {

void advance_idle(DeviceRecord& dev, const HarvestProfile& harvest,
                  const PowerProfile& profile, double t0, double t1) {
    dev.cap.voltage = voltage_after_profile(dev.cap, profile, OperationalState::idle(),
                                            harvest, t0, t1);
    dev.op_state = OperationalState::idle();
}

void perform_ra_attempt(DeviceRecord& dev, const HarvestProfile& harvest,
                        const PowerProfile& profile, double now) {
    if (!is_eligible(dev, profile.v_min))
        throw std::logic_error("RA attempt by ineligible device");

    // Harvest current held constant across the sub-second attempt.
    const double ih = harvest.current_at(now);

    dev.op_state = OperationalState::ra(RaPhase::SenseI2C);
    dev.cap.voltage = voltage_after(dev.cap, profile, dev.op_state, ih,
                                    profile.sensor_i2c_time);
    dev.op_state = OperationalState::ra(RaPhase::SenseMeas);
    dev.cap.voltage = voltage_after(dev.cap, profile, dev.op_state, ih,
                                    profile.sensor_meas_time);
    dev.op_state = OperationalState::ra(RaPhase::Tx);
    dev.cap.voltage = voltage_after(dev.cap, profile, dev.op_state, ih,
                                    profile.tx_time);

    dev.attempt_count += 1;
    dev.op_state = OperationalState::idle();
}

} // namespace aiot
