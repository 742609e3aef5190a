#include "aiotsim/aiotsim.h"

#include <cstring>
#include <string>

#include "aiotsim/config.hpp"
#include "aiotsim/sweep.hpp"

struct aiot_config {
    aiot::ParsedConfig parsed;
};

namespace {

void copy_err(char* err, size_t cap, const std::string& msg) {
    if (!err || cap == 0) return;
    const size_t n = std::min(cap - 1, msg.size());
    std::memcpy(err, msg.data(), n);
    err[n] = '\0';
}

template <typename Fn>
aiot_status guarded(Fn&& fn, char* err, size_t err_cap) {
    try {
        fn();
        return AIOT_OK;
    } catch (const aiot::ConfigError& e) {
        copy_err(err, err_cap, e.what());
        return AIOT_ERR_CONFIG;
    } catch (const std::invalid_argument& e) {
        copy_err(err, err_cap, e.what());
        return AIOT_ERR_CONFIG;
    } catch (const std::exception& e) {
        copy_err(err, err_cap, e.what());
        return AIOT_ERR_RUNTIME;
    }
}

std::string emit_parsed(const aiot::ParsedConfig& parsed) {
    if (const auto* sweep = std::get_if<aiot::SweepSpec>(&parsed))
        return aiot::emit_config(*sweep);
    return aiot::emit_config(std::get<aiot::SimConfig>(parsed));
}

} // namespace

extern "C" {

const char* aiot_version(void) { return "0.1.0"; }

aiot_status aiot_config_create(aiot_config** out) {
    if (!out) return AIOT_ERR_ARG;
    return guarded([&] { *out = new aiot_config{aiot::parse_config_text("")}; },
                   nullptr, 0);
}

aiot_status aiot_config_load(const char* path, aiot_config** out,
                             char* err, size_t err_cap) {
    if (!path || !out) return AIOT_ERR_ARG;
    return guarded([&] { *out = new aiot_config{aiot::parse_config(path)}; },
                   err, err_cap);
}

aiot_status aiot_config_set(aiot_config* cfg, const char* key, const char* value,
                            char* err, size_t err_cap) {
    if (!cfg || !key || !value) return AIOT_ERR_ARG;
    // Later keys win, so re-parsing the canonical text plus the override
    // validates the combination exactly like a file would.
    return guarded(
        [&] {
            const std::string text = emit_parsed(cfg->parsed) + key + " = " + value + "\n";
            cfg->parsed = aiot::parse_config_text(text);
        },
        err, err_cap);
}

int aiot_config_is_sweep(const aiot_config* cfg) {
    return cfg && std::holds_alternative<aiot::SweepSpec>(cfg->parsed) ? 1 : 0;
}

size_t aiot_config_emit(const aiot_config* cfg, char* buf, size_t buf_cap) {
    if (!cfg) return 0;
    const std::string text = emit_parsed(cfg->parsed);
    if (buf && buf_cap > 0) {
        const size_t n = std::min(buf_cap - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
    }
    return text.size();
}

aiot_status aiot_run(const aiot_config* cfg, const char* out_csv,
                     const char* trace_jsonl, char* err, size_t err_cap) {
    if (!cfg || !out_csv) return AIOT_ERR_ARG;
    if (std::holds_alternative<aiot::SweepSpec>(cfg->parsed)) {
        copy_err(err, err_cap, "config contains sweep keys; use aiot_sweep");
        return AIOT_ERR_CONFIG;
    }
    return guarded(
        [&] {
            aiot::run_single(std::get<aiot::SimConfig>(cfg->parsed), out_csv,
                             trace_jsonl ? trace_jsonl : "");
        },
        err, err_cap);
}

aiot_status aiot_sweep(const aiot_config* cfg, const char* out_dir,
                       char* err, size_t err_cap) {
    if (!cfg || !out_dir) return AIOT_ERR_ARG;
    return guarded(
        [&] {
            if (const auto* sweep = std::get_if<aiot::SweepSpec>(&cfg->parsed))
                aiot::run_sweep(*sweep, out_dir);
            else
                aiot::run_sweep(
                    aiot::default_sweep(std::get<aiot::SimConfig>(cfg->parsed)), out_dir);
        },
        err, err_cap);
}

aiot_status aiot_analytic(const aiot_config* cfg, const char* out_csv,
                          char* err, size_t err_cap) {
    if (!cfg || !out_csv) return AIOT_ERR_ARG;
    return guarded(
        [&] {
            if (const auto* sweep = std::get_if<aiot::SweepSpec>(&cfg->parsed))
                aiot::write_analytic_curves(*sweep, out_csv);
            else
                aiot::write_analytic_curves(
                    aiot::default_sweep(std::get<aiot::SimConfig>(cfg->parsed)), out_csv);
        },
        err, err_cap);
}

void aiot_config_free(aiot_config* cfg) { delete cfg; }

} // extern "C"
