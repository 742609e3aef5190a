#pragma once

#include <cstdint>
#include <optional>

#include "aiotsim/energy.hpp"

namespace aiot {

struct DeviceRecord {
    std::uint32_t id = 0;
    CapacitorState cap;
    OperationalState op_state = OperationalState::idle();
    std::optional<double> last_report_time;
    std::optional<double> last_reported_voltage;
    std::uint32_t attempt_count = 0;
};

inline bool is_eligible(const DeviceRecord& dev, double v_min) {
    return dev.cap.voltage >= v_min;  // boundary inclusive
}

// Idle harvesting between paging rounds: sleep-state RC update over [t0, t1].
void advance_idle(DeviceRecord& dev, const HarvestProfile& harvest,
                  const PowerProfile& profile, double t0, double t1);

// One RA attempt as the timed sense+transmit sequence: I2C readout, sensor
// measurement, then MSG1 transmission. Eligibility is checked only at entry;
// the attempt completes even if the voltage dips below v_min during it.
// Returns to Idle afterwards (the forced S2 -> S1 transition).
void perform_ra_attempt(DeviceRecord& dev, const HarvestProfile& harvest,
                        const PowerProfile& profile, double now);

} // namespace aiot
