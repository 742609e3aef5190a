#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aiot {

// splitmix64 finalizer; used only for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// One named stream per concern, derived from (master seed, replica, name).
// Draw helpers avoid std::uniform_*_distribution so sequences are identical
// across standard library implementations.
class RngStream {
public:
    RngStream() : gen_(0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t replica, std::string_view name)
        : gen_(mix64(mix64(master_seed ^ fnv1a64(name)) + replica)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool next_bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return next_double() < p;
    }

    std::uint16_t next_u16() {
        return static_cast<std::uint16_t>(gen_() >> 48);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace aiot
