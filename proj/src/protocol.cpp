#include "aiotsim/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace aiot {

RoundOutcome run_contention_round(const std::vector<std::uint32_t>& attempters,
                                  const AccessOccasionGrid& grid,
                                  RngStream& ao_rng, RngStream& id_rng) {
    if (grid.total() == 0)
        throw std::invalid_argument("grid must have at least one AO");
    RoundOutcome out;
    out.attempted = attempters;
    const std::size_t k = attempters.size();
    std::vector<Msg1> drawn;
    drawn.reserve(k);
    for (std::uint32_t dev : attempters)
        drawn.push_back({dev, draw_ao_index(ao_rng, grid), id_rng.next_u16()});
    // counting-sort scatter by AO: stable, so within an AO the attempter
    // order (ascending device id for all engine callers) is preserved
    std::vector<std::uint32_t> offset(grid.total() + 1, 0);
    for (const Msg1& m : drawn) ++offset[m.ao_index + 1];
    for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
    out.msg1s.resize(k);
    {
        std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
        for (const Msg1& m : drawn) out.msg1s[cursor[m.ao_index]++] = m;
    }
    for (std::uint32_t aoi = 0; aoi < grid.total(); ++aoi)
        if (offset[aoi + 1] > offset[aoi]) ++out.used_aos;
    // classify in attempter order; sorted output falls out for the (usual)
    // ascending attempter list, otherwise sort explicitly
    for (const Msg1& m : drawn) {
        const bool alone = offset[m.ao_index + 1] - offset[m.ao_index] == 1;
        (alone ? out.successes : out.collided).push_back(m.device_id);
    }
    if (!std::is_sorted(out.successes.begin(), out.successes.end()))
        std::sort(out.successes.begin(), out.successes.end());
    if (!std::is_sorted(out.collided.begin(), out.collided.end()))
        std::sort(out.collided.begin(), out.collided.end());
    return out;
}

RoundOutcome run_ideal_round(const std::vector<std::uint32_t>& attempters,
                             const AccessOccasionGrid& grid,
                             RngStream& ao_rng, RngStream& id_rng) {
    if (grid.total() == 0)
        throw std::invalid_argument("grid must have at least one AO");
    RoundOutcome out;
    const std::uint32_t total = grid.total();

    std::vector<std::uint32_t> scheduled = attempters;
    if (scheduled.size() > total) {
        // uniformly random subset of exactly `total` contenders
        // (partial Fisher-Yates on a copy)
        for (std::uint32_t i = 0; i < total; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(
                ao_rng.next_below(scheduled.size() - i));
            std::swap(scheduled[i], scheduled[j]);
        }
        out.not_attempted.assign(scheduled.begin() + total, scheduled.end());
        scheduled.resize(total);
        std::sort(out.not_attempted.begin(), out.not_attempted.end());
    }

    std::uint32_t ao = 0;
    out.msg1s.reserve(scheduled.size());
    for (std::uint32_t dev : scheduled) {
        out.msg1s.push_back({dev, ao++, id_rng.next_u16()});
        out.successes.push_back(dev);
    }
    out.attempted = scheduled;
    out.used_aos = static_cast<std::uint32_t>(scheduled.size());
    std::sort(out.attempted.begin(), out.attempted.end());
    std::sort(out.successes.begin(), out.successes.end());
    return out;
}

std::vector<Msg2> resolve_msg2(const RoundOutcome& outcome) {
    std::vector<Msg2> replies;
    for_each_ao(outcome.msg1s, [&](std::uint32_t ao, auto first, auto last) {
        if (last - first != 1) return;
        replies.push_back({first->device_id, ao, first->random_id});
    });
    return replies;
}

} // namespace aiot
