#include "aiotsim/sweep.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace aiot {

namespace {

nlohmann::json round_record_json(std::uint32_t replica, const RoundRecord& rec) {
    nlohmann::json j;
    j["replica"] = replica;
    j["round"] = rec.round_index;
    j["t"] = rec.time;
    j["q"] = rec.q;
    j["measured"] = rec.measured;
    j["attempted"] = rec.outcome.attempted;
    j["successes"] = rec.outcome.successes;
    j["collided"] = rec.outcome.collided;
    if (!rec.outcome.not_attempted.empty())
        j["not_attempted"] = rec.outcome.not_attempted;
    j["used_aos"] = rec.outcome.used_aos;
    nlohmann::json ao = nlohmann::json::object();
    for_each_ao(rec.outcome.msg1s, [&](std::uint32_t idx, auto first, auto last) {
        nlohmann::json list = nlohmann::json::array();
        for (; first != last; ++first)
            list.push_back({{"dev", first->device_id}, {"rid", first->random_id}});
        ao[std::to_string(idx)] = std::move(list);
    });
    j["ao_map"] = std::move(ao);
    return j;
}

} // namespace

MetricsReport run_single(const SimConfig& cfg, const std::string& out_csv,
                         const std::string& trace_path) {
    MetricsReport report;
    if (trace_path.empty()) {
        report = run_experiment(cfg);
    } else {
        // tracing forces serial replicas so the JSONL order is stable
        std::ofstream trace(trace_path, std::ios::binary);
        if (!trace)
            throw std::runtime_error("cannot open trace file: " + trace_path);
        std::vector<ReplicaStats> replicas(cfg.n_runs);
        for (std::uint32_t r = 0; r < cfg.n_runs; ++r) {
            replicas[r] = run_replica(cfg, r, [&](const RoundRecord& rec) {
                trace << round_record_json(r, rec).dump() << "\n";
            });
        }
        report = aggregate_report(cfg, std::move(replicas));
    }
    if (!out_csv.empty()) write_report_csv(report, out_csv);
    return report;
}

namespace {

void write_metric_row(std::ofstream& out, const MetricsReport& rep,
                      const char* metric, const MetricStat& s) {
    out << to_string(rep.policy) << "," << rep.n_devices << "," << rep.grid.r << ","
        << metric << "," << format_double(s.mean) << "," << format_double(s.ci95_low)
        << "," << format_double(s.ci95_high) << "\r\n";
}

} // namespace

void run_sweep(const SweepSpec& spec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (spec.n_values.empty() || spec.r_values.empty() || spec.policies.empty())
        throw std::invalid_argument("sweep lists must be non-empty");
    fs::create_directories(out_dir);

    const std::string header = "policy,n,r,metric,mean,ci95_low,ci95_high\r\n";
    std::ofstream fig4_col(fs::path(out_dir) / "fig4_collision.csv", std::ios::binary);
    std::ofstream fig4_msg2(fs::path(out_dir) / "fig4_msg2.csv", std::ios::binary);
    std::ofstream fig5(fs::path(out_dir) / "fig5_rounds.csv", std::ios::binary);
    if (!fig4_col || !fig4_msg2 || !fig5)
        throw std::runtime_error("cannot open sweep outputs under " + out_dir);
    fig4_col << header;
    fig4_msg2 << header;
    fig5 << header;

    for (PolicyKind policy : spec.policies) {
        for (std::uint32_t r : spec.r_values) {
            for (std::uint32_t n : spec.n_values) {
                SimConfig cfg = spec.base;
                cfg.policy = policy;
                cfg.grid.r = r;
                cfg.n_devices = n;
                MetricsReport rep;
                try {
                    rep = run_experiment(cfg);
                } catch (const std::exception& e) {
                    throw std::runtime_error(
                        "sweep cell (" + to_string(policy) + ", N=" +
                        std::to_string(n) + ", R=" + std::to_string(r) +
                        ") failed: " + e.what());
                }
                // the ideal benchmark appears only in the delay metric
                if (policy != PolicyKind::Ideal) {
                    write_metric_row(fig4_col, rep, "collision_prob", rep.collision_prob);
                    write_metric_row(fig4_msg2, rep, "msg2_per_used_ao",
                                     rep.msg2_per_used_ao);
                    write_metric_row(fig4_msg2, rep, "msg2_per_configured_ao",
                                     rep.msg2_per_configured_ao);
                }
                write_metric_row(fig5, rep, "mean_paging_rounds_measured",
                                 rep.mean_rounds_measured);
                write_metric_row(fig5, rep, "mean_paging_rounds_analytic",
                                 rep.mean_rounds_analytic);
                fig4_col.flush();
                fig4_msg2.flush();
                fig5.flush();
            }
        }
    }
    write_analytic_curves(spec,
                          (std::filesystem::path(out_dir) / "analytic_curves.csv").string());
}

void write_analytic_curves(const SweepSpec& spec, const std::string& out_csv) {
    std::ofstream out(out_csv, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + out_csv);
    out << "r,k_prime,p_col,e_ns_exact,e_ns_approx,mean_rounds\r\n";
    const std::uint32_t k_max =
        spec.n_values.empty() ? 100
                              : *std::max_element(spec.n_values.begin(), spec.n_values.end());
    for (std::uint32_t r : spec.r_values) {
        for (std::uint32_t k = 1; k <= k_max; ++k) {
            const double e_ns = expected_successes(k, r);
            out << r << "," << k << "," << format_double(collision_probability(k, r))
                << "," << format_double(e_ns) << ","
                << format_double(expected_successes_approx(k, r)) << ","
                << format_double(mean_paging_rounds(k, e_ns)) << "\r\n";
        }
    }
}

} // namespace aiot
