#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aiotsim/engine.hpp"

namespace aiot {

// Experiment grid over (policy x N x R); base supplies everything else.
struct SweepSpec {
    std::vector<std::uint32_t> n_values;
    std::vector<std::uint32_t> r_values;
    std::vector<PolicyKind> policies;
    SimConfig base;
};

using ParsedConfig = std::variant<SimConfig, SweepSpec>;

// Raised with "line N: ..." diagnostics on malformed input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Key-value text, one `key = value` per line, `#` comments. Any sweep_* key
// turns the result into a SweepSpec. Omitted keys take the Table-style
// simulation defaults baked into SimConfig.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config(const std::string& path);

std::string emit_config(const SimConfig& cfg);
std::string emit_config(const SweepSpec& spec);

SweepSpec default_sweep(const SimConfig& base);

} // namespace aiot
