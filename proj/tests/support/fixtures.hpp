#ifndef WNE_TESTS_FIXTURES_HPP
#define WNE_TESTS_FIXTURES_HPP

#include <string>

#include "wne/game.hpp"

namespace wne::test {

// Two agents, actions {a,b} and {x,y}. Agent 0's goal accepts iff the first
// letter's components match, agent 1's iff they mismatch. No subset of
// agents admits an equilibrium (matching pennies).
inline GameSpec pennies_game() {
    RawGame raw;
    raw.actions = {{"a", "b"}, {"x", "y"}};
    auto goal = [](int agent, const std::string& hit1, const std::string& hit2,
                   const std::string& miss1, const std::string& miss2) {
        RawGoal g;
        g.agent = agent;
        g.states = {"s0", "acc", "rej"};
        g.initial = "s0";
        g.accepting = {"acc"};
        int idx = 0;
        auto add = [&](const std::string& from, const std::string& a0, const std::string& a1,
                       const std::string& to) {
            g.transitions.push_back(RawTransition{from, {a0, a1}, to, idx++});
        };
        add("s0", hit1.substr(0, 1), hit1.substr(1), "acc");
        add("s0", hit2.substr(0, 1), hit2.substr(1), "acc");
        add("s0", miss1.substr(0, 1), miss1.substr(1), "rej");
        add("s0", miss2.substr(0, 1), miss2.substr(1), "rej");
        for (std::string from : {"acc", "rej"})
            for (std::string a0 : {"a", "b"})
                for (std::string a1 : {"x", "y"}) add(from, a0, a1, from);
        return g;
    };
    raw.goals.push_back(goal(0, "ax", "by", "ay", "bx"));
    raw.goals.push_back(goal(1, "ay", "bx", "ax", "by"));
    return validate_game(raw);
}

// Two agents, actions {a,b} and {x,y}; both goals accept once the joint
// letter (a,x) has occurred. Equilibria exist exactly for the empty set and
// the full set.
inline GameSpec coop_game() {
    RawGame raw;
    raw.actions = {{"a", "b"}, {"x", "y"}};
    for (int agent = 0; agent < 2; ++agent) {
        RawGoal g;
        g.agent = agent;
        g.states = {"s0", "acc", "rej"};
        g.initial = "s0";
        g.accepting = {"acc"};
        int idx = 0;
        auto add = [&](const std::string& from, const std::string& a0, const std::string& a1,
                       const std::string& to) {
            g.transitions.push_back(RawTransition{from, {a0, a1}, to, idx++});
        };
        for (std::string a0 : {"a", "b"})
            for (std::string a1 : {"x", "y"}) {
                add("s0", a0, a1, (a0 == "a" && a1 == "x") ? "acc" : "s0");
                add("acc", a0, a1, "acc");
                add("rej", a0, a1, "rej");
            }
        raw.goals.push_back(std::move(g));
    }
    return validate_game(raw);
}

// Letter ids in both fixtures, in canonical order.
inline constexpr LetterId kAX = 0, kAY = 1, kBX = 2, kBY = 3;

inline std::string fixture_path(const std::string& name) {
    return std::string(WNE_FIXTURE_DIR) + "/" + name;
}

} // namespace wne::test

#endif
