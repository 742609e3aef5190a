#include "aiotsim/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace aiot {

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Naive: return "naive";
        case PolicyKind::StaticAloha: return "static_aloha";
        case PolicyKind::EhAware: return "eh_aware";
        case PolicyKind::Ideal: return "ideal";
    }
    return "unknown";
}

std::optional<PolicyKind> policy_from_string(const std::string& name) {
    if (name == "naive") return PolicyKind::Naive;
    if (name == "static_aloha") return PolicyKind::StaticAloha;
    if (name == "eh_aware") return PolicyKind::EhAware;
    if (name == "ideal") return PolicyKind::Ideal;
    return std::nullopt;
}

void ReaderState::record_report(std::uint32_t device_id, double reported_voltage,
                                std::uint32_t attempt_count, double now) {
    Entry& e = entries_.at(device_id);
    e.last_voltage = reported_voltage;
    e.last_time = now;
    e.last_attempt_count = attempt_count;
}

double ReaderState::predict_voltage(std::uint32_t device_id, const PowerProfile& profile,
                                    const HarvestProfile& harvest, double now) const {
    const Entry& e = entries_.at(device_id);
    if (!e.last_voltage) {
        // prior for never-reported devices
        return optimistic_prior_ ? profile.v_min : 0.0;
    }
    if (now < *e.last_time)
        throw std::invalid_argument("prediction time precedes last report");
    // The reader assumes the device stayed asleep since its last report;
    // unobserved (collided) attempts are invisible to it.
    CapacitorState cap{*e.last_voltage, capacitances_.at(device_id)};
    return voltage_after_profile(cap, profile, OperationalState::idle(), harvest,
                                 *e.last_time, now);
}

std::uint32_t ReaderState::estimate_available(const std::vector<std::uint32_t>& paged_group,
                                              const PowerProfile& profile,
                                              const HarvestProfile& harvest,
                                              double now) const {
    std::uint32_t count = 0;
    for (std::uint32_t id : paged_group) {
        if (predict_voltage(id, profile, harvest, now) >= profile.v_min) ++count;
    }
    return count;
}

double access_probability(PolicyKind kind, const AccessOccasionGrid& grid,
                          std::uint32_t n_total, std::uint32_t k_hat) {
    if (n_total == 0)
        throw std::invalid_argument("n_total must be >= 1");
    const double r = static_cast<double>(grid.r);
    switch (kind) {
        case PolicyKind::Naive:
        case PolicyKind::Ideal:
            return 1.0;
        case PolicyKind::StaticAloha:
            return std::min(1.0, r / static_cast<double>(n_total));
        case PolicyKind::EhAware:
            if (k_hat == 0) return 1.0;  // stale-prediction fallback
            return std::min(1.0, r / static_cast<double>(k_hat));
    }
    return 1.0;
}

std::vector<std::uint32_t> attempt_filter(const std::vector<std::uint32_t>& eligible,
                                          double q, RngStream& rng) {
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("access probability out of [0, 1]");
    std::vector<std::uint32_t> kept;
    kept.reserve(eligible.size());
    for (std::uint32_t id : eligible) {
        if (rng.next_double() < q) kept.push_back(id);
    }
    return kept;
}

} // namespace aiot
