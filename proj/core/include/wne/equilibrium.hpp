#ifndef WNE_EQUILIBRIUM_HPP
#define WNE_EQUILIBRIUM_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wne/errors.hpp"
#include "wne/game.hpp"
#include "wne/safety.hpp"

namespace wne {

class MissingSolution : public std::invalid_argument {
public:
    explicit MissingSolution(int agent)
        : std::invalid_argument("no safety solution provided for deviator " + std::to_string(agent)) {}
};

/// Product state of the word automaton that tracks all goal DFAs at once:
/// one component per agent plus the set of queried agents whose goals are
/// still pending. Accepting iff pending is empty; once empty it stays empty.
struct AwState {
    std::vector<StateId> components;
    AgentSet pending = 0;
    bool operator==(const AwState&) const = default;
};

struct AwStateHash {
    std::size_t operator()(const AwState& s) const {
        std::size_t h = 0x9e3779b97f4a7c15ull ^ s.pending;
        for (StateId q : s.components) h = (h * 1099511628211ull) ^ static_cast<std::size_t>(q);
        return h;
    }
};

/// All components at their initial states; pending = W.
AwState aw_initial(const GameSpec& game, AgentSet w);

/// Advances every component by one joint letter. Returns nothing (stuck)
/// when the goal of an agent outside W would be satisfied; otherwise drops
/// newly satisfied agents from pending.
std::optional<AwState> aw_step(const GameSpec& game, AgentSet w, const AwState& s, LetterId letter);

/// aw_step restricted by the deviators' safety games: the letter must be a
/// winning Player-0 move for every deviator, and the successor must stay in
/// every deviator's winning region. `solutions` is indexed by agent id and
/// must hold an entry for every agent outside W with at least two actions.
std::optional<AwState> apw_step(const GameSpec& game, AgentSet w,
                                const std::vector<std::optional<SafetySolution>>& solutions,
                                const AwState& s, LetterId letter);

/// Whether the word automaton for W accepts the ultimately periodic word.
bool aw_accepts(const GameSpec& game, AgentSet w, const Lasso& lasso);

struct SearchStats {
    std::size_t explored_states = 0;
    double elapsed_seconds = 0.0;
};

struct Verdict {
    AgentSet winning_set = 0;
    bool exists = false;
    std::optional<Lasso> witness;
    SearchStats stats;
};

inline constexpr std::size_t kDefaultStateBudget = 10'000'000;

/// On-the-fly emptiness for a deterministic-per-letter Buchi word automaton
/// whose accepting set is closed under defined transitions (acceptance
/// persistence). BFS in canonical letter order to the nearest accepting
/// state, then BFS for a shortest cycle back to it; accepting states that
/// admit no cycle are skipped in discovery order. Returns the witness lasso
/// or nothing. Throws StateBudgetExceeded once more than `state_budget`
/// distinct states have been interned.
template <typename State, typename Step, typename Accept, typename Hash = std::hash<State>>
std::optional<Lasso> buchi_nonempty(const State& initial, int num_letters, Step step, Accept accepting,
                                    std::size_t state_budget = kDefaultStateBudget,
                                    SearchStats* stats = nullptr, Hash hash = Hash{}) {
    const auto start_time = std::chrono::steady_clock::now();
    std::unordered_map<State, int, Hash> ids(16, hash);
    std::vector<State> states;
    std::vector<int> parent, parent_letter;
    std::vector<char> discovered;

    auto intern = [&](const State& s) {
        auto [it, fresh] = ids.try_emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            if (states.size() >= state_budget) throw StateBudgetExceeded(state_budget);
            states.push_back(s);
            parent.push_back(-1);
            parent_letter.push_back(-1);
            discovered.push_back(0);
        }
        return it->second;
    };
    auto finish = [&](std::optional<Lasso> result) {
        if (stats) {
            stats->explored_states = states.size();
            stats->elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
        }
        return result;
    };
    auto path_to = [&](int v) {
        std::vector<LetterId> word;
        for (int u = v; parent[u] != -1; u = parent[u]) word.push_back(parent_letter[u]);
        std::reverse(word.begin(), word.end());
        return word;
    };
    // Shortest nonempty path anchor -> anchor, or nothing.
    auto find_cycle = [&](int anchor) -> std::optional<std::vector<LetterId>> {
        std::unordered_map<int, std::pair<int, LetterId>> came_from;
        std::deque<int> queue{anchor};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            const State current = states[v];
            for (LetterId a = 0; a < num_letters; ++a) {
                std::optional<State> succ = step(current, a);
                if (!succ) continue;
                const int u = intern(*succ);
                if (u == anchor) {
                    std::vector<LetterId> cycle{a};
                    for (int x = v; x != anchor; x = came_from[x].first) cycle.push_back(came_from[x].second);
                    std::reverse(cycle.begin(), cycle.end());
                    return cycle;
                }
                if (came_from.contains(u)) continue;
                came_from.emplace(u, std::make_pair(v, a));
                queue.push_back(u);
            }
        }
        return std::nullopt;
    };
    auto try_accepting = [&](int v) -> std::optional<Lasso> {
        if (!accepting(states[v])) return std::nullopt;
        if (auto cycle = find_cycle(v)) return Lasso{path_to(v), std::move(*cycle)};
        return std::nullopt;
    };

    const int root = intern(initial);
    discovered[root] = 1;
    if (auto found = try_accepting(root)) return finish(std::move(found));
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        const State current = states[v];
        for (LetterId a = 0; a < num_letters; ++a) {
            std::optional<State> succ = step(current, a);
            if (!succ) continue;
            const int u = intern(*succ);
            if (discovered[u]) continue;
            discovered[u] = 1;
            parent[u] = v;
            parent_letter[u] = a;
            if (auto found = try_accepting(u)) return finish(std::move(found));
            queue.push_back(u);
        }
    }
    return finish(std::nullopt);
}

/// Decides whether a Nash equilibrium with winning set exactly W exists:
/// solves the deviators' safety games and tests the restricted word
/// automaton for emptiness. The witness, when present, is the primary trace
/// of some such equilibrium profile.
Verdict decide_w_ne(const GameSpec& game, AgentSet w, std::size_t state_budget = kDefaultStateBudget);

/// Variant reusing prebuilt safety solutions (indexed by agent; entries for
/// agents in W or with singleton alphabets are ignored / may be empty).
Verdict decide_w_ne(const GameSpec& game, AgentSet w,
                    const std::vector<std::optional<SafetySolution>>& solutions,
                    std::size_t state_budget = kDefaultStateBudget);

/// Solves every safety game once, then decides all 2^k subsets. Results are
/// ordered by subset bitmask. `parallelism` > 1 fans subsets out to that
/// many worker threads; all shared inputs are read-only.
std::vector<Verdict> enumerate_ne_sets(const GameSpec& game,
                                       std::size_t state_budget = kDefaultStateBudget,
                                       int parallelism = 1);

/// Safety solutions for every agent that can deviate (>= 2 actions).
std::vector<std::optional<SafetySolution>> solve_all_safety_games(const GameSpec& game);

} // namespace wne

#endif
