// Acceptance suite: cross-validates the word-automaton pipeline against the
// tree-automaton oracle and the spec'd fixtures, and checks the solver's
// scaling bounds. Prints one line per criterion; exits nonzero on failure.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "wne/equilibrium.hpp"
#include "wne/json_io.hpp"
#include "wne/oracle.hpp"
#include "wne/reduction.hpp"
#include "wne/synthesis.hpp"

using namespace wne;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct RoundTrip {
    long long attempted = 0;
    long long failed = 0;
};

AgentSet satisfied_set(const GameSpec& game, const Lasso& lasso) {
    AgentSet s = 0;
    for (int i = 0; i < game.num_agents(); ++i)
        if (lasso_satisfies(game.goal(i), lasso)) s = set_with(s, i);
    return s;
}

// Criterion 1: word-automaton and tree-automaton routes agree on every
// subset of >= 200 random games. Also feeds the synthesis round trip (6).
Criterion criterion_agreement(RoundTrip& round_trip) {
    Timer timer;
    test::Rng rng(1001);
    const int games = 200;
    long long checks = 0, mismatches = 0;
    for (int g = 0; g < games; ++g) {
        GameSpec game = test::random_game(rng, 3, 4, 2);
        auto solutions = solve_all_safety_games(game);
        for (AgentSet w = 0; w < (AgentSet{1} << game.num_agents()); ++w) {
            Verdict verdict = decide_w_ne(game, w, solutions);
            const bool oracle = oracle_decide_w_ne(game, w);
            ++checks;
            if (verdict.exists != oracle) ++mismatches;
            if (verdict.exists) {
                ++round_trip.attempted;
                ProfileTransducer t = synthesize_profile(game, w, *verdict.witness, solutions);
                if (!verify_profile(game, w, t).passed()) ++round_trip.failed;
            }
        }
    }
    const double elapsed = timer.seconds();
    std::ostringstream detail;
    detail << games << " games, " << checks << " subset checks, " << mismatches
           << " mismatches, " << elapsed << "s (limit 60s)";
    return {1, "decide/oracle agreement on random games", mismatches == 0 && elapsed < 60.0,
            detail.str()};
}

// Criterion 2: per-state agreement between each deviator's safety game and
// tree-automaton nonemptiness from that state, on >= 100 random games.
Criterion criterion_safety_vs_tree() {
    Timer timer;
    test::Rng rng(1002);
    const int games = 100;
    long long checks = 0, mismatches = 0;
    for (int g = 0; g < games; ++g) {
        GameSpec game = test::random_game(rng, 3, 4, 2);
        TwAutomaton tw = build_tw(game, 0);  // empty winning set: every agent deviates
        std::vector<bool> winners = tw_nonempty_all(tw);
        for (std::size_t d = 0; d < tw.dev_agents.size(); ++d) {
            const int j = tw.dev_agents[d];
            SafetySolution sol = solve_safety(build_safety_arena(game, j));
            const GoalDfa& dfa = game.goal(j);
            for (StateId q = 0; q < dfa.num_states(); ++q) {
                if (dfa.is_accepting(q)) continue;
                ++checks;
                if (sol.winning_state(q) != winners[tw.dev_state(static_cast<int>(d), q)])
                    ++mismatches;
            }
        }
    }
    const double elapsed = timer.seconds();
    std::ostringstream detail;
    detail << games << " games, " << checks << " state checks, " << mismatches << " mismatches, "
           << elapsed << "s (limit 30s)";
    return {2, "safety winning region equals tree nonemptiness", mismatches == 0 && elapsed < 30.0,
            detail.str()};
}

// Criterion 3: acceptance of an ultimately periodic word characterizes
// exactly-W satisfaction, on >= 1000 random triples.
Criterion criterion_word_acceptance() {
    Timer timer;
    test::Rng rng(1003);
    const int triples = 1000;
    long long mismatches = 0;
    for (int i = 0; i < triples; ++i) {
        GameSpec game = test::random_game(rng, 3, 4, 2);
        const AgentSet w = static_cast<AgentSet>(rng.below(1 << game.num_agents()));
        Lasso lasso = test::random_lasso(rng, game.num_letters());
        if (aw_accepts(game, w, lasso) != (satisfied_set(game, lasso) == w)) ++mismatches;
    }
    const double elapsed = timer.seconds();
    std::ostringstream detail;
    detail << triples << " triples, " << mismatches << " mismatches, " << elapsed
           << "s (limit 10s)";
    return {3, "word acceptance characterizes exactly-W satisfaction",
            mismatches == 0 && elapsed < 10.0, detail.str()};
}

// Criterion 4: the DFA-intersection reduction. Intersection nonemptiness,
// the main pipeline, and the oracle must coincide on >= 100 random tuples;
// witnesses must decompose as (common word) . marker. Feeds criterion 6.
Criterion criterion_reduction(RoundTrip& round_trip) {
    Timer timer;
    test::Rng rng(1004);
    const int tuples = 100;
    long long mismatches = 0, structure_failures = 0;
    for (int i = 0; i < tuples; ++i) {
        const int k = rng.between(1, 3);
        std::vector<FlatDfa> dfas;
        for (int d = 0; d < k; ++d) dfas.push_back(test::random_flat_dfa(rng, {"a", "b"}));
        const bool intersect = dfa_intersection_witness(dfas).has_value();
        GameSpec game = build_dfaie_game(dfas);
        const AgentSet all = full_set(k);
        auto solutions = solve_all_safety_games(game);
        Verdict verdict = decide_w_ne(game, all, solutions);
        const bool oracle = oracle_decide_w_ne(game, all);
        if (verdict.exists != intersect || oracle != intersect) ++mismatches;
        if (verdict.exists) {
            const int marker = game.num_letters() - 1;
            std::vector<int> before;
            int markers = 0;
            for (LetterId a : verdict.witness->prefix) {
                const int symbol = game.letter_action(a, 0);
                if (symbol == marker)
                    ++markers;
                else if (markers == 0)
                    before.push_back(symbol);
            }
            if (markers != 1) ++structure_failures;
            for (const FlatDfa& dfa : dfas)
                if (!dfa.accepts(before)) ++structure_failures;

            ++round_trip.attempted;
            ProfileTransducer t = synthesize_profile(game, all, *verdict.witness, solutions);
            if (!verify_profile(game, all, t).passed()) ++round_trip.failed;
        }
    }
    const double elapsed = timer.seconds();
    std::ostringstream detail;
    detail << tuples << " tuples, " << mismatches << " mismatches, " << structure_failures
           << " witness-structure failures, " << elapsed << "s (limit 30s)";
    return {4, "intersection emptiness reduction", mismatches == 0 && structure_failures == 0 &&
            elapsed < 30.0, detail.str()};
}

// Criterion 5: canonical fixtures, against hand analysis and the oracle.
Criterion criterion_fixtures(const std::string& fixture_dir) {
    Timer timer;
    long long failures = 0;
    GameSpec pennies = parse_game(fixture_dir + "/pennies.json");
    for (AgentSet w = 0; w < 4; ++w) {
        if (decide_w_ne(pennies, w).exists) ++failures;
        if (oracle_decide_w_ne(pennies, w)) ++failures;
    }
    GameSpec coop = parse_game(fixture_dir + "/coop.json");
    for (AgentSet w = 0; w < 4; ++w) {
        const bool expected = (w == 0) || (w == 3);
        if (decide_w_ne(coop, w).exists != expected) ++failures;
        if (oracle_decide_w_ne(coop, w) != expected) ++failures;
    }
    const double elapsed = timer.seconds();
    std::ostringstream detail;
    detail << "pennies all-false, coop {none, both} true; " << failures << " failures, "
           << elapsed << "s (limit 1s)";
    return {5, "canonical fixtures", failures == 0 && elapsed < 1.0, detail.str()};
}

// Criterion 6: synthesis round trip over every true verdict from 1 and 4.
Criterion criterion_round_trip(const RoundTrip& round_trip) {
    std::ostringstream detail;
    detail << round_trip.attempted << " profiles synthesized, " << round_trip.failed
           << " failed verification";
    return {6, "synthesis round trip on true verdicts",
            round_trip.attempted > 0 && round_trip.failed == 0, detail.str()};
}

// Criterion 7: a >= 1e5-edge arena solves in < 5s, and the solver agrees
// with the minimax oracle on 500 small arenas.
Criterion criterion_safety_scaling() {
    test::Rng rng(1007);

    // Large arena: deviator with 200 states over a 512-letter joint alphabet.
    std::vector<std::vector<std::string>> actions(2);
    for (int a = 0; a < 256; ++a) actions[0].push_back("a" + std::to_string(a));
    actions[1] = {"x", "y"};
    const int joint = 512;
    GoalDfa big = test::random_goal(rng, joint, 1);
    {
        const int n = 200;
        big.state_names.clear();
        for (int q = 0; q < n; ++q) big.state_names.push_back("q" + std::to_string(q));
        big.accepting.assign(n, false);
        for (int q = 1; q < n; ++q) big.accepting[q] = rng.chance(0.05);
        big.num_letters = joint;
        big.delta.resize(static_cast<std::size_t>(n) * joint);
        for (auto& target : big.delta) target = rng.below(n);
    }
    GoalDfa small = test::random_goal(rng, joint, 2);
    GameSpec game(actions, {big, small});

    SafetyArena arena = build_safety_arena(game, 0);
    Timer solve_timer;
    SafetySolution sol = solve_safety(arena);
    const double solve_seconds = solve_timer.seconds();
    const long long edges = arena.edge_count();
    bool pass = edges >= 100000 && solve_seconds < 5.0;

    // Oracle agreement on 500 small arenas.
    long long arenas = 0, mismatches = 0;
    test::Rng rng2(1008);
    while (arenas < 500) {
        GameSpec small_game = test::random_game(rng2, 2, 5, 2);
        for (int j = 0; j < small_game.num_agents(); ++j) {
            if (small_game.action_count(j) < 2 || arenas >= 500) continue;
            SafetyArena a = build_safety_arena(small_game, j);
            SafetySolution s = solve_safety(a);
            for (int v = 0; v < a.node_count(); ++v)
                if (s.win0[v] != test::minimax_safety_oracle(a, v)) ++mismatches;
            ++arenas;
        }
    }
    pass = pass && mismatches == 0;
    std::ostringstream detail;
    detail << edges << " edges solved in " << solve_seconds << "s (limit 5s); " << arenas
           << " small arenas vs minimax oracle, " << mismatches << " mismatches";
    return {7, "safety solver scaling and oracle agreement", pass, detail.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::string fixture_dir = argc > 1 ? argv[1] : WNE_FIXTURE_DIR;

    RoundTrip round_trip;
    std::vector<Criterion> criteria;
    auto guarded = [&](int id, const std::string& name, auto&& fn) {
        try {
            criteria.push_back(fn());
        } catch (const std::exception& e) {
            criteria.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };
    guarded(1, "decide/oracle agreement on random games",
            [&] { return criterion_agreement(round_trip); });
    guarded(2, "safety winning region equals tree nonemptiness", criterion_safety_vs_tree);
    guarded(3, "word acceptance characterizes exactly-W satisfaction", criterion_word_acceptance);
    guarded(4, "intersection emptiness reduction", [&] { return criterion_reduction(round_trip); });
    guarded(5, "canonical fixtures", [&] { return criterion_fixtures(fixture_dir); });
    guarded(6, "synthesis round trip on true verdicts", [&] { return criterion_round_trip(round_trip); });
    guarded(7, "safety solver scaling and oracle agreement", criterion_safety_scaling);

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!c.pass) ++failures;
        std::printf("criterion %d: %-50s %s (%s)\n", c.id, c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.detail.c_str());
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
