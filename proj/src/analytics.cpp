#include "aiotsim/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aiot {

TransitionMatrix make_transition_matrix(double p12) {
    if (p12 < 0.0 || p12 > 1.0)
        throw std::invalid_argument("p12 out of [0, 1]");
    return {1.0 - p12, p12, 1.0, 0.0};
}

double collision_probability(std::uint64_t k_prime, std::uint64_t r_total) {
    if (k_prime < 1 || r_total < 1)
        throw std::invalid_argument("collision_probability needs K' >= 1 and R >= 1");
    const double r = static_cast<double>(r_total);
    return 1.0 - std::pow(1.0 - 1.0 / r, static_cast<double>(k_prime - 1));
}

double expected_successes(std::uint64_t k_prime, std::uint64_t r_total) {
    if (r_total < 1)
        throw std::invalid_argument("expected_successes needs R >= 1");
    if (k_prime == 0) return 0.0;
    const double k = static_cast<double>(k_prime);
    const double r = static_cast<double>(r_total);
    return k * std::pow(1.0 - 1.0 / r, k - 1.0);
}

double expected_successes_approx(std::uint64_t k_prime, std::uint64_t r_total) {
    if (r_total < 1)
        throw std::invalid_argument("expected_successes_approx needs R >= 1");
    const double k = static_cast<double>(k_prime);
    return k * std::exp(-k / static_cast<double>(r_total));
}

double mean_paging_rounds(std::uint64_t n, double e_ns) {
    if (e_ns < 0.0)
        throw std::invalid_argument("expected successes must be >= 0");
    if (e_ns == 0.0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(n) / e_ns;
}

EmpiricalRates measure_empirical_rates(const std::vector<RoundObservation>& trace) {
    if (trace.empty())
        throw std::invalid_argument("empty round trace");
    const std::size_t n = trace.front().eligible.size();
    EmpiricalRates rates;
    rates.p_e_hat.assign(n, 0.0);
    rates.p12_hat.assign(n, 0.0);
    for (const RoundObservation& obs : trace) {
        if (obs.eligible.size() != n || obs.attempted.size() != n)
            throw std::invalid_argument("inconsistent device count in round trace");
        for (std::size_t i = 0; i < n; ++i) {
            if (obs.eligible[i]) rates.p_e_hat[i] += 1.0;
            if (obs.attempted[i]) rates.p12_hat[i] += 1.0;
        }
    }
    // Every round starts from idle (p21 = 1), so the idle->RA rate is simply
    // the per-round attempt frequency.
    const double rounds = static_cast<double>(trace.size());
    for (std::size_t i = 0; i < n; ++i) {
        rates.p_e_hat[i] /= rounds;
        rates.p12_hat[i] /= rounds;
    }
    return rates;
}

} // namespace aiot
