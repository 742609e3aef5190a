// Command-line front end. Links only the C API on purpose: it doubles as a
// smoke test that the shared library surface is complete.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aiotsim/aiotsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

char g_err[1024];

int status_to_exit(aiot_status st) {
    switch (st) {
        case AIOT_OK: return kExitOk;
        case AIOT_ERR_CONFIG: return kExitConfig;
        default: return kExitRuntime;
    }
}

int report_failure(aiot_status st) {
    std::fprintf(stderr, "error: %s\n", g_err[0] ? g_err : "unknown failure");
    return status_to_exit(st);
}

aiot_config* load_or_default(const std::string& path, int& exit_code) {
    aiot_config* cfg = nullptr;
    aiot_status st;
    if (path.empty())
        st = aiot_config_create(&cfg);
    else
        st = aiot_config_load(path.c_str(), &cfg, g_err, sizeof(g_err));
    if (st != AIOT_OK) {
        exit_code = report_failure(st);
        return nullptr;
    }
    exit_code = kExitOk;
    return cfg;
}

bool apply_seed(aiot_config* cfg, const std::string& seed) {
    if (seed.empty()) return true;
    const aiot_status st =
        aiot_config_set(cfg, "seed", seed.c_str(), g_err, sizeof(g_err));
    if (st != AIOT_OK) std::fprintf(stderr, "error: %s\n", g_err);
    return st == AIOT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"A-IoT paging-triggered CBRA simulator"};
    app.require_subcommand(1);

    std::string config_path, out, trace, seed;

    auto* run = app.add_subcommand("run", "run a single experiment");
    run->add_option("-c,--config", config_path, "config file");
    run->add_option("--out", out, "metrics CSV path")->default_val("metrics.csv");
    run->add_option("--trace", trace, "per-round JSON-lines trace path");
    run->add_option("--seed", seed, "override the config seed");

    auto* sweep = app.add_subcommand("sweep", "reproduce the figure data");
    sweep->add_option("-c,--config", config_path, "config file");
    sweep->add_option("--out", out, "output directory")->default_val("sweep_out");
    sweep->add_option("--seed", seed, "override the config seed");

    auto* analytic = app.add_subcommand("analytic", "closed-form curves only");
    analytic->add_option("-c,--config", config_path, "config file");
    analytic->add_option("--out", out, "output CSV path")->default_val("analytic_curves.csv");

    auto* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("-c,--config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    int exit_code = kExitOk;
    aiot_config* cfg = load_or_default(config_path, exit_code);
    if (!cfg) return exit_code;
    if (!apply_seed(cfg, seed)) {
        aiot_config_free(cfg);
        return kExitConfig;
    }

    aiot_status st = AIOT_OK;
    if (validate->parsed()) {
        std::printf("config ok (%s)\n",
                    aiot_config_is_sweep(cfg) ? "sweep" : "single run");
    } else if (run->parsed()) {
        st = aiot_run(cfg, out.c_str(), trace.empty() ? nullptr : trace.c_str(),
                      g_err, sizeof(g_err));
        if (st == AIOT_OK) std::printf("wrote %s\n", out.c_str());
    } else if (sweep->parsed()) {
        st = aiot_sweep(cfg, out.c_str(), g_err, sizeof(g_err));
        if (st == AIOT_OK) std::printf("wrote sweep CSVs under %s\n", out.c_str());
    } else if (analytic->parsed()) {
        st = aiot_analytic(cfg, out.c_str(), g_err, sizeof(g_err));
        if (st == AIOT_OK) std::printf("wrote %s\n", out.c_str());
    }

    aiot_config_free(cfg);
    return st == AIOT_OK ? kExitOk : report_failure(st);
}
