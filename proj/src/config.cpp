#include "aiotsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aiot {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(std::size_t line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing chars");
        return x;
    } catch (const std::exception&) {
        fail(line, key + ": expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_uint(std::size_t line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing chars");
        return x;
    } catch (const std::exception&) {
        fail(line, key + ": expected a nonnegative integer, got '" + v + "'");
    }
}

bool parse_bool(std::size_t line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, key + ": expected true/false, got '" + v + "'");
}

// "10,20,30" or "10:100:10" (inclusive range with step)
std::vector<std::uint32_t> parse_uint_list(std::size_t line, const std::string& key,
                                           const std::string& v) {
    std::vector<std::uint32_t> out;
    if (v.find(':') != std::string::npos) {
        std::istringstream ss(v);
        std::string lo_s, hi_s, step_s;
        if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
            !std::getline(ss, step_s))
            fail(line, key + ": range syntax is lo:hi:step");
        const auto lo = parse_uint(line, key, trim(lo_s));
        const auto hi = parse_uint(line, key, trim(hi_s));
        const auto step = parse_uint(line, key, trim(step_s));
        if (step == 0 || hi < lo) fail(line, key + ": bad range bounds");
        for (std::uint64_t x = lo; x <= hi; x += step)
            out.push_back(static_cast<std::uint32_t>(x));
        return out;
    }
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<std::uint32_t>(parse_uint(line, key, trim(item))));
    if (out.empty()) fail(line, key + ": empty list");
    return out;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    SweepSpec sweep;
    bool is_sweep = false;
    bool harvest_is_trace = false;
    bool has_trace_path = false;
    std::string trace_path;
    double harvest_constant = 0.1e-3;
    std::size_t harvest_kind_line = 0;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(lineno, "expected 'key = value'");

        if (key == "n_devices") cfg.n_devices = static_cast<std::uint32_t>(parse_uint(lineno, key, value));
        else if (key == "r") cfg.grid.r = static_cast<std::uint32_t>(parse_uint(lineno, key, value));
        else if (key == "y") cfg.grid.y = static_cast<std::uint32_t>(parse_uint(lineno, key, value));
        else if (key == "policy") {
            const auto p = policy_from_string(value);
            if (!p) fail(lineno, "unknown policy '" + value + "'");
            cfg.policy = *p;
        }
        else if (key == "p_r2d") cfg.p_r2d = parse_double(lineno, key, value);
        else if (key == "step_seconds") cfg.step_seconds = parse_double(lineno, key, value);
        else if (key == "n_steps") cfg.n_steps = parse_uint(lineno, key, value);
        else if (key == "n_runs") cfg.n_runs = static_cast<std::uint32_t>(parse_uint(lineno, key, value));
        else if (key == "seed") cfg.seed = parse_uint(lineno, key, value);
        else if (key == "threads") cfg.threads = static_cast<std::uint32_t>(parse_uint(lineno, key, value));
        else if (key == "warmup_fraction") cfg.warmup_fraction = parse_double(lineno, key, value);
        else if (key == "v_min") cfg.power.v_min = parse_double(lineno, key, value);
        else if (key == "v_max") cfg.power.v_max = parse_double(lineno, key, value);
        else if (key == "supply_voltage") cfg.power.supply_voltage = parse_double(lineno, key, value);
        else if (key == "leakage_current") cfg.power.leakage_current = parse_double(lineno, key, value);
        else if (key == "sleep_current") cfg.power.sleep_current = parse_double(lineno, key, value);
        else if (key == "mcu_active_current") cfg.power.mcu_active_current = parse_double(lineno, key, value);
        else if (key == "tx_current") cfg.power.tx_current = parse_double(lineno, key, value);
        else if (key == "sensor_i2c_time") cfg.power.sensor_i2c_time = parse_double(lineno, key, value);
        else if (key == "sensor_meas_time") cfg.power.sensor_meas_time = parse_double(lineno, key, value);
        else if (key == "tx_time") cfg.power.tx_time = parse_double(lineno, key, value);
        else if (key == "harvest_kind") {
            harvest_kind_line = lineno;
            if (value == "constant") harvest_is_trace = false;
            else if (value == "trace") harvest_is_trace = true;
            else fail(lineno, "harvest_kind must be constant or trace");
        }
        else if (key == "harvest_constant_current") harvest_constant = parse_double(lineno, key, value);
        else if (key == "harvest_trace_path") { trace_path = value; has_trace_path = true; }
        else if (key == "capacitance_min") cfg.capacitance_min = parse_double(lineno, key, value);
        else if (key == "capacitance_max") cfg.capacitance_max = parse_double(lineno, key, value);
        else if (key == "divisor_mode") {
            if (value == "used_aos") cfg.divisor_mode = DivisorMode::UsedAos;
            else if (value == "configured_aos") cfg.divisor_mode = DivisorMode::ConfiguredAos;
            else fail(lineno, "divisor_mode must be used_aos or configured_aos");
        }
        else if (key == "ideal_overflow_charges_energy")
            cfg.ideal_overflow_charges_energy = parse_bool(lineno, key, value);
        else if (key == "optimistic_prior") cfg.optimistic_prior = parse_bool(lineno, key, value);
        else if (key == "init_voltage_mode") {
            if (value == "uniform") cfg.init_voltage_uniform = true;
            else if (value == "fixed") cfg.init_voltage_uniform = false;
            else fail(lineno, "init_voltage_mode must be uniform or fixed");
        }
        else if (key == "init_voltage_fixed") cfg.init_voltage_fixed = parse_double(lineno, key, value);
        else if (key == "sweep_n") { sweep.n_values = parse_uint_list(lineno, key, value); is_sweep = true; }
        else if (key == "sweep_r") { sweep.r_values = parse_uint_list(lineno, key, value); is_sweep = true; }
        else if (key == "sweep_policies") {
            is_sweep = true;
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto p = policy_from_string(trim(item));
                if (!p) fail(lineno, "unknown policy '" + trim(item) + "'");
                sweep.policies.push_back(*p);
            }
            if (sweep.policies.empty()) fail(lineno, "sweep_policies: empty list");
        }
        else fail(lineno, "unknown key '" + key + "'");
    }

    if (harvest_is_trace) {
        if (!has_trace_path)
            fail(harvest_kind_line, "harvest_kind = trace requires harvest_trace_path");
        cfg.harvest = HarvestProfile::from_csv(trace_path);
        cfg.harvest_trace_path = trace_path;
    } else {
        if (harvest_constant < 0.0)
            throw ConfigError("harvest_constant_current must be >= 0");
        cfg.harvest = HarvestProfile::constant(harvest_constant);
        cfg.harvest_trace_path.clear();
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (!is_sweep) return cfg;

    SweepSpec full = default_sweep(cfg);
    if (!sweep.n_values.empty()) full.n_values = sweep.n_values;
    if (!sweep.r_values.empty()) full.r_values = sweep.r_values;
    if (!sweep.policies.empty()) full.policies = sweep.policies;
    for (std::uint32_t r : full.r_values)
        if (r < 1) throw ConfigError("sweep_r values must be >= 1");
    for (std::uint32_t n : full.n_values)
        if (n < 1) throw ConfigError("sweep_n values must be >= 1");
    return full;
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

std::string fmt_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_sim_keys(std::ostringstream& out, const SimConfig& cfg) {
    out << "n_devices = " << cfg.n_devices << "\n";
    out << "r = " << cfg.grid.r << "\n";
    out << "y = " << cfg.grid.y << "\n";
    out << "policy = " << to_string(cfg.policy) << "\n";
    out << "p_r2d = " << fmt_full(cfg.p_r2d) << "\n";
    out << "step_seconds = " << fmt_full(cfg.step_seconds) << "\n";
    out << "n_steps = " << cfg.n_steps << "\n";
    out << "n_runs = " << cfg.n_runs << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "warmup_fraction = " << fmt_full(cfg.warmup_fraction) << "\n";
    out << "v_min = " << fmt_full(cfg.power.v_min) << "\n";
    out << "v_max = " << fmt_full(cfg.power.v_max) << "\n";
    out << "supply_voltage = " << fmt_full(cfg.power.supply_voltage) << "\n";
    out << "leakage_current = " << fmt_full(cfg.power.leakage_current) << "\n";
    out << "sleep_current = " << fmt_full(cfg.power.sleep_current) << "\n";
    out << "mcu_active_current = " << fmt_full(cfg.power.mcu_active_current) << "\n";
    out << "tx_current = " << fmt_full(cfg.power.tx_current) << "\n";
    out << "sensor_i2c_time = " << fmt_full(cfg.power.sensor_i2c_time) << "\n";
    out << "sensor_meas_time = " << fmt_full(cfg.power.sensor_meas_time) << "\n";
    out << "tx_time = " << fmt_full(cfg.power.tx_time) << "\n";
    if (!cfg.harvest_trace_path.empty()) {
        out << "harvest_kind = trace\n";
        out << "harvest_trace_path = " << cfg.harvest_trace_path << "\n";
    } else {
        out << "harvest_kind = constant\n";
        out << "harvest_constant_current = " << fmt_full(cfg.harvest.constant_current())
            << "\n";
    }
    out << "capacitance_min = " << fmt_full(cfg.capacitance_min) << "\n";
    out << "capacitance_max = " << fmt_full(cfg.capacitance_max) << "\n";
    out << "divisor_mode = "
        << (cfg.divisor_mode == DivisorMode::UsedAos ? "used_aos" : "configured_aos")
        << "\n";
    out << "ideal_overflow_charges_energy = "
        << (cfg.ideal_overflow_charges_energy ? "true" : "false") << "\n";
    out << "optimistic_prior = " << (cfg.optimistic_prior ? "true" : "false") << "\n";
    out << "init_voltage_mode = " << (cfg.init_voltage_uniform ? "uniform" : "fixed")
        << "\n";
    out << "init_voltage_fixed = " << fmt_full(cfg.init_voltage_fixed) << "\n";
}

} // namespace

std::string emit_config(const SimConfig& cfg) {
    std::ostringstream out;
    emit_sim_keys(out, cfg);
    return out.str();
}

std::string emit_config(const SweepSpec& spec) {
    std::ostringstream out;
    emit_sim_keys(out, spec.base);
    auto list = [&](const char* key, const std::vector<std::uint32_t>& vs) {
        out << key << " = ";
        for (std::size_t i = 0; i < vs.size(); ++i)
            out << (i ? "," : "") << vs[i];
        out << "\n";
    };
    list("sweep_n", spec.n_values);
    list("sweep_r", spec.r_values);
    out << "sweep_policies = ";
    for (std::size_t i = 0; i < spec.policies.size(); ++i)
        out << (i ? "," : "") << to_string(spec.policies[i]);
    out << "\n";
    return out.str();
}

SweepSpec default_sweep(const SimConfig& base) {
    SweepSpec spec;
    spec.base = base;
    for (std::uint32_t n = 10; n <= 100; n += 10) spec.n_values.push_back(n);
    spec.r_values = {8, 16, 32};
    spec.policies = {PolicyKind::Naive, PolicyKind::StaticAloha, PolicyKind::EhAware,
                     PolicyKind::Ideal};
    return spec;
}

} // namespace aiot
