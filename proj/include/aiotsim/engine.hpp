#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aiotsim/analytics.hpp"
#include "aiotsim/device.hpp"
#include "aiotsim/energy.hpp"
#include "aiotsim/policy.hpp"
#include "aiotsim/protocol.hpp"

namespace aiot {

enum class DivisorMode { UsedAos, ConfiguredAos };

struct SimConfig {
    std::uint32_t n_devices = 10;
    AccessOccasionGrid grid{8, 1};
    PolicyKind policy = PolicyKind::Naive;
    double p_r2d = 0.01;
    double step_seconds = 5.0;
    std::uint64_t n_steps = 20000;
    std::uint32_t n_runs = 25;
    std::uint64_t seed = 1;
    PowerProfile power;
    HarvestProfile harvest = HarvestProfile::constant(0.1e-3);
    std::string harvest_trace_path;  // set when harvest came from a CSV trace
    double capacitance_min = 1.0;
    double capacitance_max = 10.0;
    double warmup_fraction = 0.1;
    DivisorMode divisor_mode = DivisorMode::UsedAos;
    bool ideal_overflow_charges_energy = false;
    bool optimistic_prior = true;
    bool init_voltage_uniform = true;  // uniform in [0, v_max] per device
    double init_voltage_fixed = 0.0;   // used when not uniform
    std::uint32_t threads = 1;         // replica workers; 0 = hardware

    void validate() const;  // throws std::invalid_argument
};

// Per-replica accumulators over the measurement window (post warm-up).
struct ReplicaStats {
    std::uint64_t rounds_triggered_all = 0;  // including warm-up
    std::uint64_t rounds_measured = 0;
    std::uint64_t rounds_with_attempts = 0;
    std::uint64_t attempts_total = 0;
    std::uint64_t successes_total = 0;
    std::uint64_t collisions_total = 0;
    double sum_collision_frac = 0.0;      // per-attempt collision rate, per round
    double sum_msg2_per_used = 0.0;       // successes / nonempty AOs, per round
    double sum_msg2_per_configured = 0.0; // successes / (Y*R), per round
    std::uint64_t report_intervals = 0;   // completed report-to-report gaps
    double report_interval_rounds = 0.0;  // summed gap lengths, in paging rounds

    double collision_prob() const;
    double msg2_per_used_ao() const;
    double msg2_per_configured_ao() const;
    double mean_rounds_measured() const;        // mechanical, per-device gaps
    double mean_rounds_analytic(std::uint32_t n_devices) const;  // N / E[Ns]
};

struct MetricStat {
    double mean = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint32_t n_replicas = 0;
};

struct MetricsReport {
    PolicyKind policy = PolicyKind::Naive;
    std::uint32_t n_devices = 0;
    AccessOccasionGrid grid;
    MetricStat collision_prob;
    MetricStat msg2_per_used_ao;
    MetricStat msg2_per_configured_ao;
    MetricStat mean_rounds_measured;
    MetricStat mean_rounds_analytic;
    std::uint64_t rounds_executed = 0;  // measured rounds, summed over replicas
    std::uint64_t attempts_total = 0;
    std::uint64_t successes_total = 0;
    std::uint64_t collisions_total = 0;
    std::vector<ReplicaStats> replicas;
};

// Everything a paging round exposes to observers (trace writer, tests).
struct RoundRecord {
    std::uint64_t round_index = 0;
    double time = 0.0;
    double q = 1.0;
    RoundOutcome outcome;
    std::vector<bool> eligible;
    std::vector<bool> attempted;
    bool measured = false;
};

using RoundObserver = std::function<void(const RoundRecord&)>;

// One Monte Carlo replica; all randomness comes from streams derived from
// (seed, replica_index, stream name).
ReplicaStats run_replica(const SimConfig& cfg, std::uint32_t replica_index,
                         const RoundObserver& observer = nullptr);

// Order-insensitive reduction of replica-indexed results.
MetricsReport aggregate_report(const SimConfig& cfg, std::vector<ReplicaStats> replicas);

// Aggregates replicas into means and 95% CIs. Replicas land in indexed
// slots, so parallel and serial execution agree exactly.
MetricsReport run_experiment(const SimConfig& cfg);

// Long-format rows: policy,n,r,metric,mean,ci95_low,ci95_high.
void write_report_csv(const MetricsReport& report, const std::string& path);

// Stable numeric formatting shared by every CSV writer.
std::string format_double(double v);

} // namespace aiot
