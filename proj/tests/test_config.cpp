#include <doctest.h>

#include <string>
#include <variant>

#include "aiotsim/config.hpp"

using namespace aiot;

TEST_CASE("empty config yields the table defaults") {
    const auto parsed = parse_config_text("");
    REQUIRE(std::holds_alternative<SimConfig>(parsed));
    const auto& cfg = std::get<SimConfig>(parsed);
    CHECK(cfg.n_devices == 10);
    CHECK(cfg.grid.r == 8);
    CHECK(cfg.grid.y == 1);
    CHECK(cfg.policy == PolicyKind::Naive);
    CHECK(cfg.p_r2d == doctest::Approx(0.01));
    CHECK(cfg.step_seconds == doctest::Approx(5.0));
    CHECK(cfg.n_steps == 20000);
    CHECK(cfg.n_runs == 25);
    CHECK(cfg.capacitance_min == doctest::Approx(1.0));
    CHECK(cfg.capacitance_max == doctest::Approx(10.0));
    CHECK(cfg.power.v_min == doctest::Approx(1.8));
    CHECK(cfg.power.v_max == doctest::Approx(3.3));
    CHECK(cfg.power.supply_voltage == doctest::Approx(3.3));
    CHECK(cfg.power.leakage_current == doctest::Approx(0.03e-3));
    CHECK(cfg.power.sleep_current == doctest::Approx(0.02e-3));
    CHECK(cfg.power.mcu_active_current == doctest::Approx(0.091e-3));
    CHECK(cfg.power.tx_current == doctest::Approx(20.65e-3));
    CHECK(cfg.power.sensor_i2c_time == doctest::Approx(0.000325));
    CHECK(cfg.power.sensor_meas_time == doctest::Approx(0.0055));
    CHECK(cfg.harvest.constant_current() == doctest::Approx(0.1e-3));
    CHECK(cfg.warmup_fraction == doctest::Approx(0.1));
}

TEST_CASE("comments, blanks and whitespace are tolerated") {
    const auto parsed = parse_config_text(
        "# full-line comment\n"
        "\n"
        "  n_devices = 42   # trailing comment\n"
        "r=16\n");
    const auto& cfg = std::get<SimConfig>(parsed);
    CHECK(cfg.n_devices == 42);
    CHECK(cfg.grid.r == 16);
}

TEST_CASE("malformed input fails with a line diagnostic") {
    auto expect_line = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_line("n_devices = 5\nnot a kv pair\n", "line 2");
    expect_line("bogus_key = 1\n", "bogus_key");
    expect_line("n_steps = ten\n", "n_steps");
    expect_line("policy = clairvoyant\n", "unknown policy");
    expect_line("divisor_mode = sometimes\n", "divisor_mode");
    expect_line("harvest_kind = trace\n", "harvest_trace_path");
}

TEST_CASE("out-of-range values are rejected at validation") {
    CHECK_THROWS_AS(parse_config_text("p_r2d = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_steps = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_devices = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("r = 0\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("capacitance_min = 5\ncapacitance_max = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("warmup_fraction = 1.0\n"), ConfigError);
}

TEST_CASE("emit/parse round-trips every field") {
    SimConfig cfg;
    cfg.n_devices = 37;
    cfg.grid = {32, 2};
    cfg.policy = PolicyKind::EhAware;
    cfg.p_r2d = 0.0125;
    cfg.step_seconds = 2.5;
    cfg.n_steps = 1234;
    cfg.n_runs = 3;
    cfg.seed = 987654321;
    cfg.threads = 4;
    cfg.warmup_fraction = 0.2;
    cfg.power.tx_time = 0.007;
    cfg.harvest = HarvestProfile::constant(0.25e-3);
    cfg.capacitance_min = 2.0;
    cfg.capacitance_max = 4.0;
    cfg.divisor_mode = DivisorMode::ConfiguredAos;
    cfg.ideal_overflow_charges_energy = true;
    cfg.optimistic_prior = false;
    cfg.init_voltage_uniform = false;
    cfg.init_voltage_fixed = 2.2;

    const auto reparsed = parse_config_text(emit_config(cfg));
    REQUIRE(std::holds_alternative<SimConfig>(reparsed));
    const auto& got = std::get<SimConfig>(reparsed);
    CHECK(emit_config(got) == emit_config(cfg));
    CHECK(got.n_devices == 37);
    CHECK(got.grid.r == 32);
    CHECK(got.grid.y == 2);
    CHECK(got.policy == PolicyKind::EhAware);
    CHECK(got.seed == 987654321);
    CHECK(got.divisor_mode == DivisorMode::ConfiguredAos);
    CHECK(got.ideal_overflow_charges_energy);
    CHECK_FALSE(got.optimistic_prior);
    CHECK_FALSE(got.init_voltage_uniform);
    CHECK(got.init_voltage_fixed == doctest::Approx(2.2));
    CHECK(got.power.tx_time == doctest::Approx(0.007));
    CHECK(got.harvest.constant_current() == doctest::Approx(0.25e-3));
}

TEST_CASE("sweep keys turn the config into a grid") {
    const auto parsed = parse_config_text(
        "sweep_n = 10:100:10\n"
        "sweep_r = 8,16,32\n"
        "sweep_policies = naive,static_aloha,eh_aware,ideal\n"
        "n_runs = 5\n");
    REQUIRE(std::holds_alternative<SweepSpec>(parsed));
    const auto& spec = std::get<SweepSpec>(parsed);
    CHECK(spec.n_values.size() == 10);
    CHECK(spec.n_values.front() == 10);
    CHECK(spec.n_values.back() == 100);
    CHECK(spec.r_values == std::vector<std::uint32_t>{8, 16, 32});
    CHECK(spec.policies.size() == 4);
    CHECK(spec.base.n_runs == 5);

    // any single sweep key adopts the full default grid for the others
    const auto partial = parse_config_text("sweep_r = 16\n");
    const auto& spec2 = std::get<SweepSpec>(partial);
    CHECK(spec2.r_values == std::vector<std::uint32_t>{16});
    CHECK(spec2.n_values.size() == 10);
    CHECK(spec2.policies.size() == 4);

    const auto rt = parse_config_text(emit_config(spec));
    REQUIRE(std::holds_alternative<SweepSpec>(rt));
    CHECK(emit_config(std::get<SweepSpec>(rt)) == emit_config(spec));
}

TEST_CASE("default sweep matches the evaluation grid") {
    const auto spec = default_sweep(SimConfig{});
    CHECK(spec.n_values.size() == 10);
    CHECK(spec.r_values == std::vector<std::uint32_t>{8, 16, 32});
    CHECK(spec.policies.size() == 4);
}
