#include <doctest.h>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "wne/equilibrium.hpp"
#include "wne/oracle.hpp"
#include "wne/reduction.hpp"

using namespace wne;

namespace {

// DFA over {a,b} accepting exactly "ab".
FlatDfa exactly_ab() {
    FlatDfa dfa;
    dfa.alphabet = {"a", "b"};
    dfa.state_names = {"q0", "q1", "q2", "dead"};
    dfa.initial = 0;
    dfa.accepting = {false, false, true, false};
    dfa.delta = {
        1, 3,  // q0
        3, 2,  // q1
        3, 3,  // q2
        3, 3,  // dead
    };
    return dfa;
}

FlatDfa ends_in_a() {
    FlatDfa dfa;
    dfa.alphabet = {"a", "b"};
    dfa.state_names = {"e", "f"};
    dfa.initial = 0;
    dfa.accepting = {false, true};
    dfa.delta = {1, 0, 1, 0};
    return dfa;
}

FlatDfa even_nonempty_length() {
    FlatDfa dfa;
    dfa.alphabet = {"a", "b"};
    dfa.state_names = {"z", "o", "e"};
    dfa.initial = 0;
    dfa.accepting = {false, false, true};
    dfa.delta = {1, 1, 2, 2, 1, 1};
    return dfa;
}

FlatDfa empty_language() {
    FlatDfa dfa;
    dfa.alphabet = {"a", "b"};
    dfa.state_names = {"q0", "acc"};
    dfa.initial = 0;
    dfa.accepting = {false, true};
    dfa.delta = {0, 0, 1, 1};  // acc is unreachable
    return dfa;
}

} // namespace

TEST_SUITE("reduction") {

TEST_CASE("hat transform accepts exactly word-marker-anything") {
    FlatDfa hat = hat_transform(exactly_ab());
    CHECK(hat.num_states() == exactly_ab().num_states() + 2);
    CHECK(hat.num_symbols() == 3);
    const int a = 0, b = 1, K = 2;
    CHECK(hat.accepts(std::vector<int>{a, b, K}));
    CHECK(hat.accepts(std::vector<int>{a, b, K, b, K, a}));
    CHECK_FALSE(hat.accepts(std::vector<int>{a, b}));  // no marker yet
    CHECK_FALSE(hat.accepts(std::vector<int>{a, K}));
    CHECK_FALSE(hat.accepts(std::vector<int>{K}));
    CHECK_FALSE(hat.accepts(std::vector<int>{b, a, K}));

    // Sinks self-loop on every letter.
    for (StateId q : {hat.num_states() - 2, hat.num_states() - 1})
        for (int s = 0; s < hat.num_symbols(); ++s) CHECK(hat.step(q, s) == q);
}

TEST_CASE("hat transform of an empty language never reaches its accepting sink") {
    FlatDfa hat = hat_transform(empty_language());
    const StateId accept = hat.num_states() - 2;
    std::vector<char> reach(hat.num_states(), 0);
    std::vector<StateId> stack{hat.initial};
    reach[hat.initial] = 1;
    while (!stack.empty()) {
        const StateId q = stack.back();
        stack.pop_back();
        for (int s = 0; s < hat.num_symbols(); ++s)
            if (!reach[hat.step(q, s)]) {
                reach[hat.step(q, s)] = 1;
                stack.push_back(hat.step(q, s));
            }
    }
    CHECK_FALSE(reach[accept]);
}

TEST_CASE("hat transform is total and deterministic on random inputs") {
    test::Rng rng(61);
    for (int iteration = 0; iteration < 50; ++iteration) {
        FlatDfa dfa = test::random_flat_dfa(rng, {"a", "b"});
        FlatDfa hat = hat_transform(dfa);
        CHECK(hat.num_states() == dfa.num_states() + 2);
        for (StateId q = 0; q < hat.num_states(); ++q)
            for (int s = 0; s < hat.num_symbols(); ++s) {
                CHECK(hat.step(q, s) >= 0);
                CHECK(hat.step(q, s) < hat.num_states());
            }
    }
}

TEST_CASE("game construction sizes") {
    FlatDfa dfa = ends_in_a();
    GameSpec single = build_dfaie_game({dfa});
    CHECK(single.num_agents() == 1);
    CHECK(single.num_letters() == 3);

    GameSpec triple = build_dfaie_game({dfa, ends_in_a(), even_nonempty_length()});
    CHECK(triple.num_agents() == 3);
    CHECK(triple.num_letters() == 3);  // singleton components collapse
    CHECK(triple.action_count(1) == 1);
    CHECK(triple.action_count(2) == 1);
    // Linear blow-up: two fresh states per input DFA.
    for (int i = 0; i < 3; ++i)
        CHECK(triple.goal(i).num_states() ==
              std::vector<FlatDfa>{dfa, ends_in_a(), even_nonempty_length()}[i].num_states() + 2);
}

TEST_CASE("alphabet mismatch is rejected") {
    FlatDfa other = ends_in_a();
    other.alphabet = {"a", "c"};
    CHECK_THROWS_AS(build_dfaie_game({ends_in_a(), other}), AlphabetMismatch);
    CHECK_THROWS_AS(dfa_intersection_witness({ends_in_a(), other}), AlphabetMismatch);
}

TEST_CASE("intersection witnesses") {
    // Disjoint nonempty-word languages: a+ vs b+ (initial not accepting).
    FlatDfa a_plus;
    a_plus.alphabet = {"a", "b"};
    a_plus.state_names = {"s", "a", "dead"};
    a_plus.initial = 0;
    a_plus.accepting = {false, true, false};
    a_plus.delta = {1, 2, 1, 2, 2, 2};
    FlatDfa b_plus = a_plus;
    b_plus.delta = {2, 1, 2, 2, 2, 2};
    CHECK_FALSE(dfa_intersection_witness({a_plus, b_plus}).has_value());

    auto same = dfa_intersection_witness({ends_in_a(), ends_in_a()});
    REQUIRE(same);
    CHECK(*same == std::vector<int>{0});  // shortest, canonical order

    auto combo = dfa_intersection_witness({ends_in_a(), even_nonempty_length()});
    REQUIRE(combo);
    CHECK(*combo == std::vector<int>{0, 0});  // "aa"
}

TEST_CASE("intersection nonemptiness matches full-set equilibrium existence") {
    test::Rng rng(62);
    for (int iteration = 0; iteration < 60; ++iteration) {
        const int k = rng.between(1, 3);
        std::vector<FlatDfa> dfas;
        for (int i = 0; i < k; ++i) dfas.push_back(test::random_flat_dfa(rng, {"a", "b"}));
        auto witness = dfa_intersection_witness(dfas);
        GameSpec game = build_dfaie_game(dfas);
        const AgentSet all = full_set(k);
        Verdict verdict = decide_w_ne(game, all);
        CHECK(witness.has_value() == verdict.exists);
        CHECK(verdict.exists == oracle_decide_w_ne(game, all));

        if (verdict.exists) {
            // The witness prefix carries exactly one end marker, and the part
            // before it is accepted by every input DFA.
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
            CHECK(markers == 1);
            for (const FlatDfa& dfa : dfas) CHECK(dfa.accepts(before));
        }
    }
}

TEST_CASE("product budget is enforced") {
    CHECK_THROWS_AS(dfa_intersection_witness({ends_in_a(), even_nonempty_length()}, 1),
                    SizeBudgetExceeded);
}

} // TEST_SUITE
