#include "aiotsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace aiot {

namespace {

double safe_div(double num, double den) {
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return num / den;
}

} // namespace

void SimConfig::validate() const {
    if (n_devices < 1)
        throw std::invalid_argument("n_devices must be >= 1");
    if (grid.r < 1 || grid.y < 1)
        throw std::invalid_argument("grid needs r >= 1 and y >= 1");
    if (p_r2d < 0.0 || p_r2d > 1.0)
        throw std::invalid_argument("p_r2d out of [0, 1]");
    if (!(step_seconds > 0.0))
        throw std::invalid_argument("step_seconds must be > 0");
    if (n_steps < 1)
        throw std::invalid_argument("n_steps must be >= 1");
    if (n_runs < 1)
        throw std::invalid_argument("n_runs must be >= 1");
    if (!(capacitance_min > 0.0) || capacitance_max < capacitance_min)
        throw std::invalid_argument("capacitance range must satisfy 0 < low <= high");
    if (warmup_fraction < 0.0 || warmup_fraction >= 1.0)
        throw std::invalid_argument("warmup_fraction out of [0, 1)");
    if (!init_voltage_uniform &&
        (init_voltage_fixed < 0.0 || init_voltage_fixed > power.v_max))
        throw std::invalid_argument("init_voltage_fixed out of [0, v_max]");
    power.validate();
}

double ReplicaStats::collision_prob() const {
    return safe_div(sum_collision_frac, static_cast<double>(rounds_with_attempts));
}
double ReplicaStats::msg2_per_used_ao() const {
    return safe_div(sum_msg2_per_used, static_cast<double>(rounds_with_attempts));
}
double ReplicaStats::msg2_per_configured_ao() const {
    return safe_div(sum_msg2_per_configured, static_cast<double>(rounds_with_attempts));
}
double ReplicaStats::mean_rounds_measured() const {
    return safe_div(report_interval_rounds, static_cast<double>(report_intervals));
}
double ReplicaStats::mean_rounds_analytic(std::uint32_t n_devices) const {
    if (rounds_measured == 0) return std::numeric_limits<double>::quiet_NaN();
    const double e_ns = static_cast<double>(successes_total) /
                        static_cast<double>(rounds_measured);
    return mean_paging_rounds(n_devices, e_ns);
}

ReplicaStats run_replica(const SimConfig& cfg, std::uint32_t replica_index,
                         const RoundObserver& observer) {
    cfg.validate();
    if (replica_index >= cfg.n_runs)
        throw std::invalid_argument("replica_index out of range");

    RngStream polling(cfg.seed, replica_index, "polling");
    RngStream coin(cfg.seed, replica_index, "coin");
    RngStream ao(cfg.seed, replica_index, "ao");
    RngStream randid(cfg.seed, replica_index, "randid");
    RngStream init_v(cfg.seed, replica_index, "init_v");
    RngStream cap_draw(cfg.seed, replica_index, "cap");

    const std::uint32_t n = cfg.n_devices;
    std::vector<DeviceRecord> devices(n);
    std::vector<double> caps(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        caps[i] = (cfg.capacitance_min == cfg.capacitance_max)
                      ? cfg.capacitance_min
                      : cap_draw.next_uniform(cfg.capacitance_min, cfg.capacitance_max);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        devices[i].id = i;
        devices[i].cap.capacitance = caps[i];
        devices[i].cap.voltage = cfg.init_voltage_uniform
                                     ? init_v.next_uniform(0.0, cfg.power.v_max)
                                     : cfg.init_voltage_fixed;
    }

    ReaderState reader(n, cfg.optimistic_prior);
    reader.set_capacitances(caps);

    std::vector<std::uint32_t> all_ids(n);
    for (std::uint32_t i = 0; i < n; ++i) all_ids[i] = i;

    ReplicaStats stats;
    const std::uint64_t warmup_steps = static_cast<std::uint64_t>(
        static_cast<double>(cfg.n_steps) * cfg.warmup_fraction);
    const double configured_aos = static_cast<double>(cfg.grid.total());

    // Devices are advanced lazily: voltage only matters at polling instants,
    // and the RC update composes exactly over sub-intervals.
    double advanced_until = 0.0;
    std::uint64_t round_index = 0;
    std::vector<std::uint64_t> rounds_since_report(n, 0);
    bool counters_armed = warmup_steps == 0;

    for (std::uint64_t step = 0; step < cfg.n_steps; ++step) {
        const bool measured = step >= warmup_steps;
        if (measured && !counters_armed) {
            std::fill(rounds_since_report.begin(), rounds_since_report.end(), 0);
            counters_armed = true;
        }
        if (!polling.next_bernoulli(cfg.p_r2d)) continue;

        const double now = static_cast<double>(step + 1) * cfg.step_seconds;
        for (DeviceRecord& dev : devices)
            advance_idle(dev, cfg.harvest, cfg.power, advanced_until, now);
        advanced_until = now;

        ++round_index;
        ++stats.rounds_triggered_all;

        std::vector<std::uint32_t> eligible;
        eligible.reserve(n);
        for (const DeviceRecord& dev : devices)
            if (is_eligible(dev, cfg.power.v_min)) eligible.push_back(dev.id);

        std::uint32_t k_hat = 0;
        if (cfg.policy == PolicyKind::EhAware)
            k_hat = reader.estimate_available(all_ids, cfg.power, cfg.harvest, now);
        const double q = access_probability(cfg.policy, cfg.grid, n, k_hat);

        std::vector<std::uint32_t> attempters =
            (cfg.policy == PolicyKind::Ideal) ? eligible
                                              : attempt_filter(eligible, q, coin);

        RoundOutcome outcome = (cfg.policy == PolicyKind::Ideal)
                                   ? run_ideal_round(attempters, cfg.grid, ao, randid)
                                   : run_contention_round(attempters, cfg.grid, ao, randid);
        outcome.round_index = round_index;
        outcome.q_used = q;

        for (std::uint32_t id : outcome.attempted)
            perform_ra_attempt(devices[id], cfg.harvest, cfg.power, now);
        if (cfg.ideal_overflow_charges_energy)
            for (std::uint32_t id : outcome.not_attempted)
                perform_ra_attempt(devices[id], cfg.harvest, cfg.power, now);

        if (measured)
            for (std::uint64_t& c : rounds_since_report) ++c;

        for (std::uint32_t id : outcome.successes) {
            DeviceRecord& dev = devices[id];
            reader.record_report(id, dev.cap.voltage, dev.attempt_count, now);
            dev.last_report_time = now;
            dev.last_reported_voltage = dev.cap.voltage;
            dev.attempt_count = 0;
            if (measured) {
                ++stats.report_intervals;
                stats.report_interval_rounds +=
                    static_cast<double>(rounds_since_report[id]);
                rounds_since_report[id] = 0;
            }
        }

        if (measured) {
            ++stats.rounds_measured;
            const std::size_t attempts = outcome.attempted.size();
            stats.attempts_total += attempts;
            stats.successes_total += outcome.successes.size();
            stats.collisions_total += outcome.collided.size();
            if (attempts > 0) {
                ++stats.rounds_with_attempts;
                stats.sum_collision_frac +=
                    static_cast<double>(outcome.collided.size()) /
                    static_cast<double>(attempts);
                stats.sum_msg2_per_used +=
                    static_cast<double>(outcome.successes.size()) /
                    static_cast<double>(outcome.used_aos);
                stats.sum_msg2_per_configured +=
                    static_cast<double>(outcome.successes.size()) / configured_aos;
            }
        }

        if (observer) {
            RoundRecord rec;
            rec.round_index = round_index;
            rec.time = now;
            rec.q = q;
            rec.eligible.assign(n, false);
            for (std::uint32_t id : eligible) rec.eligible[id] = true;
            rec.attempted.assign(n, false);
            for (std::uint32_t id : outcome.attempted) rec.attempted[id] = true;
            rec.measured = measured;
            rec.outcome = std::move(outcome);
            observer(rec);
        }
    }
    return stats;
}

namespace {

MetricStat aggregate(const std::vector<double>& values) {
    MetricStat stat;
    double sum = 0.0;
    std::uint32_t count = 0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        sum += v;
        ++count;
    }
    stat.n_replicas = count;
    if (count == 0) {
        stat.mean = stat.ci95_low = stat.ci95_high =
            std::numeric_limits<double>::quiet_NaN();
        return stat;
    }
    stat.mean = sum / count;
    if (count == 1) {
        stat.ci95_low = stat.ci95_high = stat.mean;  // degenerate, width 0
        return stat;
    }
    double ss = 0.0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        ss += (v - stat.mean) * (v - stat.mean);
    }
    const double sd = std::sqrt(ss / (count - 1));
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(count));
    stat.ci95_low = stat.mean - half;
    stat.ci95_high = stat.mean + half;
    return stat;
}

} // namespace

MetricsReport aggregate_report(const SimConfig& cfg, std::vector<ReplicaStats> replicas) {
    MetricsReport report;
    report.policy = cfg.policy;
    report.n_devices = cfg.n_devices;
    report.grid = cfg.grid;

    auto collect = [&](auto&& fn) {
        std::vector<double> vals;
        vals.reserve(replicas.size());
        for (const ReplicaStats& r : replicas) vals.push_back(fn(r));
        return aggregate(vals);
    };
    report.collision_prob = collect([](const ReplicaStats& r) { return r.collision_prob(); });
    report.msg2_per_used_ao =
        collect([](const ReplicaStats& r) { return r.msg2_per_used_ao(); });
    report.msg2_per_configured_ao =
        collect([](const ReplicaStats& r) { return r.msg2_per_configured_ao(); });
    report.mean_rounds_measured =
        collect([](const ReplicaStats& r) { return r.mean_rounds_measured(); });
    report.mean_rounds_analytic = collect(
        [&](const ReplicaStats& r) { return r.mean_rounds_analytic(cfg.n_devices); });

    for (const ReplicaStats& r : replicas) {
        report.rounds_executed += r.rounds_measured;
        report.attempts_total += r.attempts_total;
        report.successes_total += r.successes_total;
        report.collisions_total += r.collisions_total;
    }
    report.replicas = std::move(replicas);
    return report;
}

MetricsReport run_experiment(const SimConfig& cfg) {
    cfg.validate();
    std::vector<ReplicaStats> replicas(cfg.n_runs);

    unsigned workers = cfg.threads;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, cfg.n_runs);

    if (workers <= 1) {
        for (std::uint32_t r = 0; r < cfg.n_runs; ++r)
            replicas[r] = run_replica(cfg, r);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint32_t r = next.fetch_add(1);
                    if (r >= cfg.n_runs) return;
                    replicas[r] = run_replica(cfg, r);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return aggregate_report(cfg, std::move(replicas));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_report_csv(const MetricsReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << "policy,n,r,metric,mean,ci95_low,ci95_high\r\n";
    const std::string prefix = to_string(report.policy) + "," +
                               std::to_string(report.n_devices) + "," +
                               std::to_string(report.grid.r) + ",";
    auto row = [&](const char* metric, const MetricStat& s) {
        out << prefix << metric << "," << format_double(s.mean) << ","
            << format_double(s.ci95_low) << "," << format_double(s.ci95_high)
            << "\r\n";
    };
    row("collision_prob", report.collision_prob);
    row("msg2_per_used_ao", report.msg2_per_used_ao);
    row("msg2_per_configured_ao", report.msg2_per_configured_ao);
    row("mean_paging_rounds_measured", report.mean_rounds_measured);
    row("mean_paging_rounds_analytic", report.mean_rounds_analytic);
    auto count_row = [&](const char* metric, std::uint64_t v) {
        out << prefix << metric << "," << v << "," << v << "," << v << "\r\n";
    };
    count_row("rounds_executed", report.rounds_executed);
    count_row("attempts_total", report.attempts_total);
    count_row("successes_total", report.successes_total);
    count_row("collisions_total", report.collisions_total);
}

} // namespace aiot
