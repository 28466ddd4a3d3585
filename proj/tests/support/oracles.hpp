#ifndef WNE_TESTS_ORACLES_HPP
#define WNE_TESTS_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "wne/oracle.hpp"
#include "wne/safety.hpp"

namespace wne::test {

// Exhaustive alternating search: Player 0 wins the safety game from `node`
// iff it can keep playing for node_count() moves (a losing Player 0 is
// forced into a dead end within that many moves by positional determinacy).
// Independent of the attractor-based solver; small arenas only.
inline bool minimax_safety_oracle(const SafetyArena& arena, int node) {
    const int depth = arena.node_count();
    std::vector<std::vector<std::int8_t>> memo(
        arena.node_count(), std::vector<std::int8_t>(depth + 1, -1));
    std::function<bool(int, int)> survive = [&](int v, int steps) -> bool {
        if (steps == 0) return true;
        std::int8_t& entry = memo[v][steps];
        if (entry >= 0) return entry != 0;
        bool result;
        if (arena.is_p1(v)) {
            result = true;
            arena.for_each_successor(v, [&](int to) {
                if (result && !survive(to, steps - 1)) result = false;
            });
        } else {
            result = false;
            arena.for_each_successor(v, [&](int to) {
                if (!result && survive(to, steps - 1)) result = true;
            });
        }
        entry = result ? 1 : 0;
        return result;
    };
    return survive(node, depth);
}

// Bounded-horizon characterization of Buchi winning: keep only the accepting
// positions from which Player 0 can force a further accepting visit within
// |positions| steps, iterate to a fixpoint, then take everything that can
// force reaching the surviving core. Structurally different from the
// removal-loop solver; tiny games only.
inline std::vector<bool> naive_buchi_winners(const BuchiGame& game) {
    const int n = game.num_positions();
    auto forced_step = [&](int v, const std::vector<char>& target) {
        if (game.owner[v] == 0) {
            for (int to : game.succ[v])
                if (target[to]) return true;
            return false;
        }
        for (int to : game.succ[v])
            if (!target[to]) return false;
        return true;
    };
    auto reach_within = [&](std::vector<char> target) {
        for (int round = 0; round < n; ++round)
            for (int v = 0; v < n; ++v)
                if (!target[v] && forced_step(v, target)) target[v] = 1;
        return target;
    };

    std::vector<char> core(n, 0);
    for (int v = 0; v < n; ++v) core[v] = game.accepting[v];
    while (true) {
        const std::vector<char> reach = reach_within(core);
        std::vector<char> refined(n, 0);
        for (int v = 0; v < n; ++v)
            if (core[v] && forced_step(v, reach)) refined[v] = 1;
        if (refined == core) break;
        core = std::move(refined);
    }
    const std::vector<char> winning = reach_within(core);
    std::vector<bool> out(n);
    for (int v = 0; v < n; ++v) out[v] = winning[v];
    return out;
}

} // namespace wne::test

#endif
