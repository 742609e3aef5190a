#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aiotsim/energy.hpp"
#include "aiotsim/protocol.hpp"
#include "aiotsim/rng.hpp"

namespace aiot {

enum class PolicyKind { Naive, StaticAloha, EhAware, Ideal };

std::string to_string(PolicyKind kind);
std::optional<PolicyKind> policy_from_string(const std::string& name);

// Reader-side bookkeeping, updated only from successful reports.
class ReaderState {
public:
    explicit ReaderState(std::uint32_t n_devices, bool optimistic_prior = true)
        : optimistic_prior_(optimistic_prior), entries_(n_devices),
          capacitances_(n_devices, 1.0) {}

    // Hardware constants are known reader-side; per-device capacitance feeds
    // the voltage forecast.
    void set_capacitances(std::vector<double> caps) { capacitances_ = std::move(caps); }

    void record_report(std::uint32_t device_id, double reported_voltage,
                       std::uint32_t attempt_count, double now);

    // Sleep-state Eq.-(2) forecast from the last report; never-reported
    // devices fall back to the configured prior (v_min counts as available
    // when optimistic).
    double predict_voltage(std::uint32_t device_id, const PowerProfile& profile,
                           const HarvestProfile& harvest, double now) const;

    std::uint32_t estimate_available(const std::vector<std::uint32_t>& paged_group,
                                     const PowerProfile& profile,
                                     const HarvestProfile& harvest, double now) const;

    bool has_report(std::uint32_t device_id) const {
        return entries_[device_id].last_voltage.has_value();
    }
    std::uint32_t last_attempt_count(std::uint32_t device_id) const {
        return entries_[device_id].last_attempt_count;
    }

private:
    struct Entry {
        std::optional<double> last_voltage;
        std::optional<double> last_time;
        std::uint32_t last_attempt_count = 0;
    };
    bool optimistic_prior_;
    std::vector<Entry> entries_;
    std::vector<double> capacitances_;
};

// Per-round access probability q. Naive -> 1, static ALOHA -> min(1, R/N),
// EH-aware -> min(1, R/k_hat) with the k_hat = 0 fallback of q = 1. Ideal
// bypasses the coin flip entirely.
double access_probability(PolicyKind kind, const AccessOccasionGrid& grid,
                          std::uint32_t n_total, std::uint32_t k_hat);

// Independent q-thinning of the eligible set. Always consumes one draw per
// device so unrelated streams stay aligned across policies.
std::vector<std::uint32_t> attempt_filter(const std::vector<std::uint32_t>& eligible,
                                          double q, RngStream& rng);

} // namespace aiot
