#include <doctest.h>

#include <cmath>
#include <random>

#include "aiotsim/energy.hpp"
#include "oracles.hpp"

using namespace aiot;

namespace {

PowerProfile table_profile() { return PowerProfile{}; }

} // namespace

TEST_CASE("equivalent resistance from Table-style currents") {
    PowerProfile p = table_profile();
    // sleep: 0.02 mA + 0.03 mA leakage
    CHECK(equivalent_resistance(p, OperationalState::idle()) == doctest::Approx(66000.0));
    // tx: 20.65 mA + leakage
    CHECK(equivalent_resistance(p, OperationalState::ra(RaPhase::Tx)) ==
          doctest::Approx(3.3 / 20.68e-3));
    CHECK(load_current(p, OperationalState::ra(RaPhase::SenseI2C)) ==
          doctest::Approx(0.121e-3));

    PowerProfile bad = p;
    bad.sleep_current = 0.0;
    bad.leakage_current = 0.0;
    CHECK_THROWS(equivalent_resistance(bad, OperationalState::idle()));
}

TEST_CASE("voltage_after endpoints") {
    PowerProfile p = table_profile();
    CapacitorState cap{2.0, 1.0};
    CHECK(voltage_after(cap, p, OperationalState::idle(), 0.1e-3, 0.0) ==
          doctest::Approx(2.0));
    // exponentials vanish; clamped at v_max since Ih*Req = 6.6 V
    CHECK(voltage_after(cap, p, OperationalState::idle(), 0.1e-3, 1e9) ==
          doctest::Approx(3.3));
    // low harvest settles at Ih*Req below the clamp
    CHECK(voltage_after(cap, p, OperationalState::idle(), 0.02e-3, 1e9) ==
          doctest::Approx(0.02e-3 * 66000.0));
    CHECK_THROWS(voltage_after(cap, p, OperationalState::idle(), 0.1e-3, -1.0));
    CHECK_THROWS(voltage_after(cap, p, OperationalState::idle(), -0.1e-3, 1.0));
}

TEST_CASE("voltage_after matches the Euler oracle on the sleep example") {
    PowerProfile p = table_profile();
    CapacitorState cap{2.0, 1.0};
    const double v = voltage_after(cap, p, OperationalState::idle(), 0.1e-3, 5.0);
    const double ref =
        oracle::euler_voltage_state(cap, p, OperationalState::idle(), 0.1e-3, 5.0);
    CHECK(v == doctest::Approx(2.00035).epsilon(1e-4));
    CHECK(std::abs(v - ref) < 1e-4);
}

TEST_CASE("voltage_after agrees with Euler across randomized cases") {
    PowerProfile p = table_profile();
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> v0(0.0, 3.3);
    std::uniform_real_distribution<double> cdist(1.0, 10.0);
    std::uniform_real_distribution<double> ih(0.0, 1e-3);
    std::uniform_real_distribution<double> dt(0.0, 10.0);
    const OperationalState states[] = {
        OperationalState::idle(), OperationalState::ra(RaPhase::SenseI2C),
        OperationalState::ra(RaPhase::SenseMeas), OperationalState::ra(RaPhase::Tx)};
    for (int i = 0; i < 200; ++i) {
        CapacitorState cap{v0(gen), cdist(gen)};
        const OperationalState& s = states[i % 4];
        const double h = ih(gen), d = dt(gen);
        const double got = voltage_after(cap, p, s, h, d);
        const double ref = oracle::euler_voltage_state(cap, p, s, h, d);
        CHECK(std::abs(got - ref) < 1e-4);
    }
}

TEST_CASE("semigroup property of the RC update") {
    PowerProfile p = table_profile();
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> v0(0.0, 3.3);
    std::uniform_real_distribution<double> dt(0.0, 5000.0);
    for (int i = 0; i < 100; ++i) {
        CapacitorState cap{v0(gen), 2.5};
        const double d1 = dt(gen), d2 = dt(gen);
        const double ih = 0.04e-3;  // below the clamp so no saturation kink
        const double whole = voltage_after(cap, p, OperationalState::idle(), ih, d1 + d2);
        CapacitorState mid = cap;
        mid.voltage = voltage_after(cap, p, OperationalState::idle(), ih, d1);
        const double split = voltage_after(mid, p, OperationalState::idle(), ih, d2);
        CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
}

TEST_CASE("monotone convergence toward the harvest equilibrium") {
    PowerProfile p = table_profile();
    const double ih = 0.04e-3;
    const double target = ih * 66000.0;  // 2.64 V
    for (double start : {0.5, 3.2}) {
        CapacitorState cap{start, 1.0};
        double prev = start;
        double prev_gap = std::abs(start - target);
        for (double dt : {10.0, 100.0, 1000.0, 10000.0, 100000.0}) {
            const double v = voltage_after(cap, p, OperationalState::idle(), ih, dt);
            const double gap = std::abs(v - target);
            CHECK(gap <= prev_gap + 1e-15);
            if (start < target) CHECK(v >= prev - 1e-15);
            else CHECK(v <= prev + 1e-15);
            prev = v;
            prev_gap = gap;
        }
    }
}

TEST_CASE("pure discharge is strictly decreasing") {
    PowerProfile p = table_profile();
    CapacitorState cap{2.5, 1.0};
    double prev = cap.voltage;
    for (double dt : {0.1, 1.0, 10.0}) {
        const double v = voltage_after(cap, p, OperationalState::idle(), 0.0, dt);
        CHECK(v < prev);
        cap.voltage = v;
        prev = v;
    }
}

TEST_CASE("stored energy") {
    CHECK(stored_energy({3.0, 2.0}) == doctest::Approx(9.0));
    CHECK(stored_energy({0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(stored_energy({1.8, 10.0}) == doctest::Approx(16.2));
}

TEST_CASE("harvest profiles: constant and step-hold trace") {
    const auto c = HarvestProfile::constant(0.1e-3);
    CHECK(c.current_at(12345.0) == doctest::Approx(0.1e-3));

    const auto t = HarvestProfile::trace({{0.0, 0.1e-3}, {100.0, 0.2e-3}});
    CHECK(t.current_at(50.0) == doctest::Approx(0.1e-3));
    CHECK(t.current_at(100.0) == doctest::Approx(0.2e-3));  // boundary takes new sample
    CHECK(t.current_at(1e6) == doctest::Approx(0.2e-3));

    CHECK_THROWS(HarvestProfile::trace({}));
    CHECK_THROWS(HarvestProfile::trace({{0.0, 0.1}, {0.0, 0.2}}));
    CHECK_THROWS(HarvestProfile::trace({{0.0, -0.1}}));
    CHECK_THROWS(HarvestProfile::constant(-1.0));
}

TEST_CASE("piecewise advance over a trace matches manual segmentation") {
    PowerProfile p = table_profile();
    const auto t = HarvestProfile::trace({{0.0, 0.0}, {10.0, 0.05e-3}, {30.0, 0.0}});
    CapacitorState cap{2.0, 1.0};
    const double got = voltage_after_profile(cap, p, OperationalState::idle(), t, 5.0, 40.0);
    CapacitorState step = cap;
    step.voltage = voltage_after(step, p, OperationalState::idle(), 0.0, 5.0);
    step.voltage = voltage_after(step, p, OperationalState::idle(), 0.05e-3, 20.0);
    step.voltage = voltage_after(step, p, OperationalState::idle(), 0.0, 10.0);
    CHECK(got == doctest::Approx(step.voltage).epsilon(1e-12));
}
