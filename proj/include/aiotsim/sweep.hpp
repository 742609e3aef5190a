#pragma once

#include <string>

#include "aiotsim/config.hpp"

namespace aiot {

// Single experiment; writes the metrics CSV and, when trace_path is
// non-empty, a JSON-lines record per paging round.
MetricsReport run_single(const SimConfig& cfg, const std::string& out_csv,
                         const std::string& trace_path = "");

// Figure-reproduction sweep: fig4_collision.csv, fig4_msg2.csv,
// fig5_rounds.csv and analytic_curves.csv under out_dir. Rows are flushed
// per completed (policy, N, R) cell; deterministic given the seed.
void run_sweep(const SweepSpec& spec, const std::string& out_dir);

// Closed-form curves only (no simulation).
void write_analytic_curves(const SweepSpec& spec, const std::string& out_csv);

} // namespace aiot
