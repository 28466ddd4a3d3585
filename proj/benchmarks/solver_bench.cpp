#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "wne/equilibrium.hpp"
#include "wne/oracle.hpp"
#include "wne/safety.hpp"

using namespace wne;

namespace {

struct Rng {
    std::mt19937 eng;
    explicit Rng(std::uint32_t seed) : eng(seed) {}
    int below(int n) { return static_cast<int>(eng() % static_cast<std::uint32_t>(n)); }
};

GoalDfa random_goal(Rng& rng, int num_letters, int states, double accepting_rate) {
    GoalDfa dfa;
    for (int q = 0; q < states; ++q) dfa.state_names.push_back("q" + std::to_string(q));
    dfa.initial = 0;
    dfa.accepting.assign(states, false);
    for (int q = 1; q < states; ++q) dfa.accepting[q] = rng.below(1000) < accepting_rate * 1000;
    dfa.num_letters = num_letters;
    dfa.delta.resize(static_cast<std::size_t>(states) * num_letters);
    for (auto& target : dfa.delta) target = rng.below(states);
    return dfa;
}

// Two agents; agent 0 carries a configurable alphabet and goal size.
GameSpec arena_game(int states, int own_actions) {
    Rng rng(7);
    std::vector<std::vector<std::string>> actions(2);
    for (int a = 0; a < own_actions; ++a) actions[0].push_back("a" + std::to_string(a));
    actions[1] = {"x", "y"};
    const int joint = own_actions * 2;
    return GameSpec(actions, {random_goal(rng, joint, states, 0.05),
                              random_goal(rng, joint, 2, 0.0)});
}

GameSpec dense_game(int agents, int states) {
    Rng rng(11);
    std::vector<std::vector<std::string>> actions(agents, {"a", "b"});
    const int joint = 1 << agents;
    std::vector<GoalDfa> goals;
    for (int i = 0; i < agents; ++i) goals.push_back(random_goal(rng, joint, states, 0.3));
    return GameSpec(actions, goals);
}

void BM_SolveSafety(benchmark::State& state) {
    GameSpec game = arena_game(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    SafetyArena arena = build_safety_arena(game, 0);
    for (auto _ : state) {
        SafetySolution sol = solve_safety(arena);
        benchmark::DoNotOptimize(sol.strategy.data());
    }
    state.counters["edges"] = static_cast<double>(arena.edge_count());
}

void BM_DecideAllSubsets(benchmark::State& state) {
    GameSpec game = dense_game(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto verdicts = enumerate_ne_sets(game);
        benchmark::DoNotOptimize(verdicts.data());
    }
}

void BM_OracleDecide(benchmark::State& state) {
    GameSpec game = dense_game(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_decide_w_ne(game, 0));
}

} // namespace

BENCHMARK(BM_SolveSafety)->Args({50, 32})->Args({100, 128})->Args({200, 256})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideAllSubsets)->Args({2, 4})->Args({3, 4})->Args({3, 6})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleDecide)->Args({2, 3})->Args({2, 4})->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
