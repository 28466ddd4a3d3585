#include "wne/safety.hpp"

#include <deque>
#include <ostream>

namespace wne {

long long SafetyArena::edge_count() const {
    long long edges = 0;
    for (StateId q = 0; q < num_states; ++q)
        if (!dead_end[q]) edges += num_proj;
    edges += static_cast<long long>(p1_count()) * num_own;
    return edges;
}

SafetyArena build_safety_arena(const GameSpec& game, int deviator) {
    if (deviator < 0 || deviator >= game.num_agents())
        throw std::invalid_argument("build_safety_arena: unknown agent " + std::to_string(deviator));
    if (game.action_count(deviator) < 2) throw DeviatorHasSingletonAlphabet(deviator);

    const GoalDfa& dfa = game.goal(deviator);
    SafetyArena arena;
    arena.deviator = deviator;
    arena.num_states = dfa.num_states();
    arena.num_proj = game.num_projected(deviator);
    arena.num_own = game.action_count(deviator);
    arena.dead_end.assign(arena.num_states, false);
    for (StateId q = 0; q < arena.num_states; ++q) arena.dead_end[q] = dfa.is_accepting(q);

    arena.p1_target.resize(static_cast<std::size_t>(arena.num_states) * arena.num_proj * arena.num_own);
    std::size_t slot = 0;
    for (StateId q = 0; q < arena.num_states; ++q)
        for (ProjId p = 0; p < arena.num_proj; ++p)
            for (int c = 0; c < arena.num_own; ++c)
                arena.p1_target[slot++] = dfa.step(q, game.unproject(p, deviator, c));
    return arena;
}

SafetySolution solve_safety(const SafetyArena& arena) {
    const int n = arena.node_count();

    // Predecessor lists for the backward pass.
    std::vector<int> pred_offset(n + 1, 0);
    auto count_edge = [&](int to) { ++pred_offset[to + 1]; };
    for (int v = 0; v < n; ++v) arena.for_each_successor(v, count_edge);
    for (int v = 0; v < n; ++v) pred_offset[v + 1] += pred_offset[v];
    std::vector<int> pred(pred_offset[n]);
    std::vector<int> fill = pred_offset;
    for (int v = 0; v < n; ++v)
        arena.for_each_successor(v, [&](int to) { pred[fill[to]++] = v; });

    // Player-1 attractor to the dead-end set. Player-0 nodes fall when all
    // moves are lost (counter hits zero); Player-1 nodes fall on any lost move.
    std::vector<int> remaining(n);
    std::vector<char> lost(n, 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
        remaining[v] = arena.out_degree(v);
        if (!arena.is_p1(v) && remaining[v] == 0) {
            lost[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e = pred_offset[v]; e < pred_offset[v + 1]; ++e) {
            const int w = pred[e];
            if (lost[w]) continue;
            if (arena.is_p1(w) || --remaining[w] == 0) {
                lost[w] = 1;
                queue.push_back(w);
            }
        }
    }

    SafetySolution sol;
    sol.deviator = arena.deviator;
    sol.num_states = arena.num_states;
    sol.num_proj = arena.num_proj;
    sol.accepting.assign(arena.dead_end.begin(), arena.dead_end.end());
    sol.win0.resize(n);
    for (int v = 0; v < n; ++v) sol.win0[v] = !lost[v];
    sol.strategy.assign(arena.num_states, -1);
    for (StateId q = 0; q < arena.num_states; ++q) {
        if (arena.dead_end[q] || !sol.win0[q]) continue;
        for (ProjId p = 0; p < arena.num_proj; ++p)
            if (sol.win0[arena.p1_node(q, p)]) {
                sol.strategy[q] = p;
                break;
            }
    }
    return sol;
}

bool winning_moves(const GameSpec& game, const SafetySolution& solution, StateId q, LetterId letter) {
    if (q < 0 || q >= solution.num_states) throw UnknownState(q);
    if (solution.accepting[q]) return false;
    return solution.winning_p1(q, game.project(letter, solution.deviator));
}

void dump_arena(const GameSpec& game, const SafetyArena& arena, std::ostream& out) {
    const GoalDfa& dfa = game.goal(arena.deviator);
    out << "arena agent=" << arena.deviator << " p0=" << arena.p0_count()
        << " p1=" << arena.p1_count() << " edges=" << arena.edge_count() << '\n';
    auto p0_name = [&](StateId q) { return dfa.state_names[q]; };
    auto p1_name = [&](int node) {
        const int rel = node - arena.num_states;
        const StateId q = rel / arena.num_proj;
        const ProjId p = rel % arena.num_proj;
        return p0_name(q) + "|" + game.format_projected(p, arena.deviator);
    };
    for (int v = 0; v < arena.node_count(); ++v) {
        out << "node " << (arena.is_p1(v) ? p1_name(v) : p0_name(v))
            << " owner=" << (arena.is_p1(v) ? 1 : 0);
        if (!arena.is_p1(v) && arena.dead_end[v]) out << " dead-end";
        out << " succ:";
        arena.for_each_successor(v, [&](int to) {
            out << ' ' << (arena.is_p1(to) ? p1_name(to) : p0_name(to));
        });
        out << '\n';
    }
}

} // namespace wne
