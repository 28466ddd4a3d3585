#include "wne/equilibrium.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace wne {

AwState aw_initial(const GameSpec& game, AgentSet w) {
    AwState s;
    s.components.resize(game.num_agents());
    for (int i = 0; i < game.num_agents(); ++i) s.components[i] = game.goal(i).initial;
    s.pending = w;
    return s;
}

std::optional<AwState> aw_step(const GameSpec& game, AgentSet w, const AwState& s, LetterId letter) {
    AwState next;
    next.components.resize(game.num_agents());
    next.pending = s.pending;
    for (int i = 0; i < game.num_agents(); ++i) {
        const StateId q = game.goal(i).step(s.components[i], letter);
        if (game.goal(i).is_accepting(q)) {
            if (!set_contains(w, i)) return std::nullopt;  // forbidden satisfaction: stuck
            next.pending = set_without(next.pending, i);
        }
        next.components[i] = q;
    }
    return next;
}

std::optional<AwState> apw_step(const GameSpec& game, AgentSet w,
                                const std::vector<std::optional<SafetySolution>>& solutions,
                                const AwState& s, LetterId letter) {
    for (int j = 0; j < game.num_agents(); ++j) {
        if (set_contains(w, j) || game.action_count(j) < 2) continue;
        if (!solutions[j]) throw MissingSolution(j);
        if (!winning_moves(game, *solutions[j], s.components[j], letter)) return std::nullopt;
    }
    std::optional<AwState> next = aw_step(game, w, s, letter);
    if (!next) return std::nullopt;
    // Winning moves only lead back into the winning region, so this check is
    // redundant by attractor closure; it is kept as the literal state
    // restriction of the pruned automaton.
    for (int j = 0; j < game.num_agents(); ++j) {
        if (set_contains(w, j) || game.action_count(j) < 2) continue;
        if (!solutions[j]->winning_state(next->components[j])) return std::nullopt;
    }
    return next;
}

bool aw_accepts(const GameSpec& game, AgentSet w, const Lasso& lasso) {
    if (lasso.cycle.empty()) throw std::invalid_argument("aw_accepts: empty cycle");
    AwState s = aw_initial(game, w);
    for (LetterId a : lasso.prefix) {
        std::optional<AwState> next = aw_step(game, w, s, a);
        if (!next) return false;
        s = std::move(*next);
    }
    // The state at cycle boundaries must repeat; pending only shrinks, so its
    // value at the first repeated boundary is the run's stable pending set.
    std::unordered_map<AwState, int, AwStateHash> boundary;
    while (!boundary.contains(s)) {
        boundary.emplace(s, static_cast<int>(boundary.size()));
        for (LetterId a : lasso.cycle) {
            std::optional<AwState> next = aw_step(game, w, s, a);
            if (!next) return false;
            s = std::move(*next);
        }
    }
    return s.pending == 0;
}

std::vector<std::optional<SafetySolution>> solve_all_safety_games(const GameSpec& game) {
    std::vector<std::optional<SafetySolution>> solutions(game.num_agents());
    for (int j = 0; j < game.num_agents(); ++j)
        if (game.action_count(j) >= 2) solutions[j] = solve_safety(build_safety_arena(game, j));
    return solutions;
}

Verdict decide_w_ne(const GameSpec& game, AgentSet w,
                    const std::vector<std::optional<SafetySolution>>& solutions,
                    std::size_t state_budget) {
    const auto start_time = std::chrono::steady_clock::now();
    Verdict verdict;
    verdict.winning_set = w;

    const AwState initial = aw_initial(game, w);
    bool initial_in_region = true;
    for (int j = 0; j < game.num_agents() && initial_in_region; ++j) {
        if (set_contains(w, j) || game.action_count(j) < 2) continue;
        if (!solutions[j]) throw MissingSolution(j);
        if (!solutions[j]->winning_state(initial.components[j])) initial_in_region = false;
    }
    if (initial_in_region) {
        verdict.witness = buchi_nonempty<AwState>(
            initial, game.num_letters(),
            [&](const AwState& s, LetterId a) { return apw_step(game, w, solutions, s, a); },
            [](const AwState& s) { return s.pending == 0; },
            state_budget, &verdict.stats, AwStateHash{});
        verdict.exists = verdict.witness.has_value();
    }
    verdict.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return verdict;
}

Verdict decide_w_ne(const GameSpec& game, AgentSet w, std::size_t state_budget) {
    std::vector<std::optional<SafetySolution>> solutions(game.num_agents());
    for (int j = 0; j < game.num_agents(); ++j)
        if (!set_contains(w, j) && game.action_count(j) >= 2)
            solutions[j] = solve_safety(build_safety_arena(game, j));
    return decide_w_ne(game, w, solutions, state_budget);
}

std::vector<Verdict> enumerate_ne_sets(const GameSpec& game, std::size_t state_budget, int parallelism) {
    const int k = game.num_agents();
    if (k > 20)
        throw std::invalid_argument("enumerate_ne_sets: 2^" + std::to_string(k) +
                                    " subsets exceed any reasonable budget");
    const std::size_t count = std::size_t{1} << k;
    const std::vector<std::optional<SafetySolution>> solutions = solve_all_safety_games(game);

    std::vector<Verdict> results(count);
    if (parallelism <= 1) {
        for (std::size_t mask = 0; mask < count; ++mask)
            results[mask] = decide_w_ne(game, static_cast<AgentSet>(mask), solutions, state_budget);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (std::size_t mask = next.fetch_add(1); mask < count; mask = next.fetch_add(1))
                results[mask] = decide_w_ne(game, static_cast<AgentSet>(mask), solutions, state_budget);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    const int workers = std::min<std::size_t>(parallelism, count);
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

} // namespace wne
