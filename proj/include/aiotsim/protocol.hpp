#pragma once

#include <cstdint>
#include <vector>

#include "aiotsim/rng.hpp"

namespace aiot {

// R access occasions per trigger-defined set, Y sets per paging round.
struct AccessOccasionGrid {
    std::uint32_t r = 8;
    std::uint32_t y = 1;
    std::uint32_t total() const { return r * y; }
};

struct Msg1 {
    std::uint32_t device_id = 0;
    std::uint32_t ao_index = 0;
    std::uint16_t random_id = 0;
};

struct RoundOutcome {
    std::uint64_t round_index = 0;
    double q_used = 1.0;
    std::vector<std::uint32_t> attempted;   // devices that sent MSG1
    std::vector<std::uint32_t> successes;
    std::vector<std::uint32_t> collided;
    std::vector<std::uint32_t> not_attempted;  // ideal-round overflow only
    std::vector<Msg1> msg1s;  // grouped by ascending ao_index; within an AO,
                              // attempter order (runs share an AO)
    std::uint32_t used_aos = 0;
};

// Visits every occupied AO in index order as fn(ao_index, first, last) with
// [first, last) the contiguous MSG1 run mapped onto it.
template <typename Fn>
void for_each_ao(const std::vector<Msg1>& msg1s, Fn&& fn) {
    std::size_t i = 0;
    while (i < msg1s.size()) {
        std::size_t j = i + 1;
        while (j < msg1s.size() && msg1s[j].ao_index == msg1s[i].ao_index) ++j;
        fn(msg1s[i].ao_index, msg1s.begin() + i, msg1s.begin() + j);
        i = j;
    }
}

inline std::uint32_t draw_ao_index(RngStream& rng, const AccessOccasionGrid& grid) {
    return static_cast<std::uint32_t>(rng.next_below(grid.total()));
}

// One-shot uniform AO selection per attempter; a singleton AO succeeds,
// any occupancy >= 2 fails all mapped attempts.
RoundOutcome run_contention_round(const std::vector<std::uint32_t>& attempters,
                                  const AccessOccasionGrid& grid,
                                  RngStream& ao_rng, RngStream& id_rng);

// Genie benchmark: distinct AOs for up to total() contenders, the overflow
// (picked uniformly) neither attempts nor spends energy. Zero collisions.
RoundOutcome run_ideal_round(const std::vector<std::uint32_t>& attempters,
                             const AccessOccasionGrid& grid,
                             RngStream& ao_rng, RngStream& id_rng);

struct Msg2 {
    std::uint32_t device_id = 0;
    std::uint32_t ao_index = 0;
    std::uint16_t echoed_random_id = 0;
};

// One MSG2 per singleton AO; the echo is keyed by (AO, RandomID), so equal
// RandomIDs in different AOs stay unambiguous.
std::vector<Msg2> resolve_msg2(const RoundOutcome& outcome);

} // namespace aiot
