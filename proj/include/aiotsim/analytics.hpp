#pragma once

#include <cstdint>
#include <vector>

namespace aiot {

// Two-state availability chain. The RA state always falls back to idle,
// so p21 = 1 and p22 = 0 by construction.
struct TransitionMatrix {
    double p11 = 1.0;
    double p12 = 0.0;
    double p21 = 1.0;
    double p22 = 0.0;
};

TransitionMatrix make_transition_matrix(double p12);

// Per-attempt collision probability: 1 - (1 - 1/R)^(K'-1).
double collision_probability(std::uint64_t k_prime, std::uint64_t r_total);

// Expected successful contenders per round: K'(1 - 1/R)^(K'-1).
double expected_successes(std::uint64_t k_prime, std::uint64_t r_total);

// The matching exponential approximation K' e^(-K'/R), kept for plots.
double expected_successes_approx(std::uint64_t k_prime, std::uint64_t r_total);

// Mean paging rounds per successful report, N / E[Ns]. Zero expected
// successes map to +inf rather than throwing so sweeps stay total.
double mean_paging_rounds(std::uint64_t n, double e_ns);

// Per-round, per-device observation needed to back out the descriptive
// Markov rates from simulated mechanics.
struct RoundObservation {
    std::vector<bool> eligible;   // V >= v_min at the polling instant
    std::vector<bool> attempted;  // sent MSG1 this round
};

struct EmpiricalRates {
    std::vector<double> p_e_hat;   // fraction of rounds energy-available
    std::vector<double> p12_hat;   // fraction of idle rounds followed by RA
};

EmpiricalRates measure_empirical_rates(const std::vector<RoundObservation>& trace);

} // namespace aiot
