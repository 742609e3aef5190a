#include <doctest.h>

#include <cmath>
#include <limits>

#include "aiotsim/analytics.hpp"
#include "aiotsim/rng.hpp"
#include "oracles.hpp"

using namespace aiot;

TEST_CASE("collision probability closed form") {
    CHECK(collision_probability(1, 8) == doctest::Approx(0.0));
    CHECK(collision_probability(1, 32) == doctest::Approx(0.0));
    CHECK(collision_probability(2, 8) == doctest::Approx(0.125));
    CHECK_THROWS(collision_probability(0, 8));

    // brute-force balls-in-bins oracle at K'=10, R=8
    const auto bins = oracle::balls_in_bins(10, 8, 1000000, 31337);
    const double closed = collision_probability(10, 8);
    CHECK(closed == doctest::Approx(0.6994).epsilon(1e-3));
    CHECK(std::abs(closed - bins.collision_rate_per_attempt) < 0.005);
}

TEST_CASE("expected successes closed form") {
    CHECK(expected_successes(0, 8) == doctest::Approx(0.0));
    CHECK(expected_successes(1, 8) == doctest::Approx(1.0));
    CHECK(expected_successes(1, 32) == doctest::Approx(1.0));
    const auto bins = oracle::balls_in_bins(16, 16, 500000, 4242);
    CHECK(std::abs(expected_successes(16, 16) - bins.mean_successes) < 0.02);
}

TEST_CASE("mean paging rounds") {
    CHECK(mean_paging_rounds(16, expected_successes(16, 16)) ==
          doctest::Approx(2.632).epsilon(1e-3));
    CHECK(mean_paging_rounds(8, 8.0) == doctest::Approx(1.0));
    CHECK(std::isinf(mean_paging_rounds(10, 0.0)));  // infinite-delay sentinel
}

TEST_CASE("transition matrix structure") {
    const auto none = make_transition_matrix(0.0);
    CHECK(none.p11 == doctest::Approx(1.0));
    CHECK(none.p21 == doctest::Approx(1.0));
    CHECK(none.p22 == doctest::Approx(0.0));

    const auto flip = make_transition_matrix(1.0);
    CHECK(flip.p11 == doctest::Approx(0.0));
    CHECK(flip.p12 == doctest::Approx(1.0));

    const auto mid = make_transition_matrix(0.3);
    CHECK(mid.p11 + mid.p12 == doctest::Approx(1.0));
    CHECK(mid.p21 + mid.p22 == doctest::Approx(1.0));
    CHECK_THROWS(make_transition_matrix(1.5));
}

TEST_CASE("collision probability monotone in K' and antitone in R") {
    for (std::uint64_t r : {8, 16, 32}) {
        double prev = -1.0;
        for (std::uint64_t k = 1; k <= 128; ++k) {
            const double p = collision_probability(k, r);
            CHECK(p >= prev);
            prev = p;
        }
    }
    for (std::uint64_t k : {2, 10, 50}) {
        CHECK(collision_probability(k, 8) >= collision_probability(k, 16));
        CHECK(collision_probability(k, 16) >= collision_probability(k, 32));
    }
}

TEST_CASE("exponential approximation tracks the exact form") {
    // (1-1/R)^(K'-1) vs e^(-K'/R): relative error peaks near 12% at R=8 and
    // shrinks as R grows; both must agree on the trivial endpoints.
    for (std::uint64_t r : {8, 16, 32, 64}) {
        for (std::uint64_t k = 1; k <= 4 * r; ++k) {
            const double exact = expected_successes(k, r);
            const double approx = expected_successes_approx(k, r);
            CHECK(std::abs(exact - approx) / std::max(exact, 1.0) <= 0.12);
        }
    }
    for (std::uint64_t r : {32, 64}) {
        for (std::uint64_t k = 1; k <= r; ++k) {
            const double exact = expected_successes(k, r);
            const double approx = expected_successes_approx(k, r);
            CHECK(std::abs(exact - approx) / std::max(exact, 1.0) <= 0.035);
        }
    }
}

TEST_CASE("empirical rates recover synthetic parameters") {
    // two devices: one always eligible attempting with q, one never eligible
    const double q = 0.4;
    const std::size_t rounds = 20000;
    RngStream rng(5150, 0, "synthetic");
    std::vector<RoundObservation> trace(rounds);
    std::size_t attempts = 0;
    for (auto& obs : trace) {
        obs.eligible = {true, false};
        const bool a = rng.next_double() < q;
        obs.attempted = {a, false};
        if (a) ++attempts;
    }
    const auto rates = measure_empirical_rates(trace);
    CHECK(rates.p_e_hat[0] == doctest::Approx(1.0));
    CHECK(rates.p_e_hat[1] == doctest::Approx(0.0));
    CHECK(rates.p12_hat[1] == doctest::Approx(0.0));
    // p12_hat ~ p_e * q within 3 sigma binomial
    const double sigma = std::sqrt(q * (1 - q) / rounds);
    CHECK(std::abs(rates.p12_hat[0] - q) < 3 * sigma);
    CHECK(rates.p12_hat[0] ==
          doctest::Approx(static_cast<double>(attempts) / rounds));

    CHECK_THROWS(measure_empirical_rates({}));
}
