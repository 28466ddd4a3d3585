#include "wne/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace wne {

bool FlatDfa::accepts(std::span<const int> word) const {
    StateId q = initial;
    for (int s : word) q = step(q, s);
    return accepting[q];
}

namespace {

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
    return base;
}

// Remaps `dfa` onto the symbol order of `alphabet`; the symbol sets must match.
FlatDfa remap_alphabet(const FlatDfa& dfa, const std::vector<std::string>& alphabet) {
    if (dfa.alphabet == alphabet) return dfa;
    if (std::set<std::string>(dfa.alphabet.begin(), dfa.alphabet.end()) !=
        std::set<std::string>(alphabet.begin(), alphabet.end())) {
        std::string expected;
        for (const auto& a : alphabet) expected += (expected.empty() ? "" : ",") + a;
        throw AlphabetMismatch("expected {" + expected + "}");
    }
    std::map<std::string, int> index;
    for (int s = 0; s < static_cast<int>(dfa.alphabet.size()); ++s) index[dfa.alphabet[s]] = s;
    FlatDfa out = dfa;
    out.alphabet = alphabet;
    for (StateId q = 0; q < dfa.num_states(); ++q)
        for (int s = 0; s < static_cast<int>(alphabet.size()); ++s)
            out.delta[static_cast<std::size_t>(q) * alphabet.size() + s] = dfa.step(q, index[alphabet[s]]);
    return out;
}

} // namespace

FlatDfa hat_transform(const FlatDfa& dfa) {
    FlatDfa hat;
    hat.alphabet = dfa.alphabet;
    hat.alphabet.push_back(fresh_name(dfa.alphabet, "K"));
    hat.state_names = dfa.state_names;
    const std::string accept_name = fresh_name(hat.state_names, "accept");
    hat.state_names.push_back(accept_name);
    hat.state_names.push_back(fresh_name(hat.state_names, "reject"));
    const StateId accept = dfa.num_states();
    const StateId reject = accept + 1;

    hat.initial = dfa.initial;
    hat.accepting.assign(hat.state_names.size(), false);
    hat.accepting[accept] = true;

    const int symbols = hat.num_symbols();
    const int marker = symbols - 1;
    hat.delta.assign(static_cast<std::size_t>(hat.num_states()) * symbols, -1);
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        for (int s = 0; s < dfa.num_symbols(); ++s)
            hat.delta[static_cast<std::size_t>(q) * symbols + s] = dfa.step(q, s);
        hat.delta[static_cast<std::size_t>(q) * symbols + marker] = dfa.accepting[q] ? accept : reject;
    }
    for (StateId q : {accept, reject})
        for (int s = 0; s < symbols; ++s) hat.delta[static_cast<std::size_t>(q) * symbols + s] = q;
    return hat;
}

GameSpec build_dfaie_game(const std::vector<FlatDfa>& dfas) {
    if (dfas.empty()) throw std::invalid_argument("build_dfaie_game: no input DFAs");
    const std::vector<std::string>& alphabet = dfas[0].alphabet;
    if (alphabet.empty()) throw AlphabetMismatch("empty alphabet");

    const int k = static_cast<int>(dfas.size());
    std::vector<FlatDfa> hats;
    hats.reserve(k);
    for (const FlatDfa& dfa : dfas) hats.push_back(hat_transform(remap_alphabet(dfa, alphabet)));

    std::vector<std::vector<std::string>> actions(k);
    actions[0] = hats[0].alphabet;
    for (int i = 1; i < k; ++i) actions[i] = {"*"};

    // Singleton components contribute nothing to the joint letter index, so
    // joint letters coincide with agent 0's symbols and the tables carry over.
    const int joint = static_cast<int>(actions[0].size());
    std::vector<GoalDfa> goals;
    goals.reserve(k);
    for (const FlatDfa& hat : hats) {
        GoalDfa goal;
        goal.state_names = hat.state_names;
        goal.initial = hat.initial;
        goal.accepting = hat.accepting;
        goal.num_letters = joint;
        goal.delta = hat.delta;
        goals.push_back(std::move(goal));
    }
    return GameSpec(std::move(actions), std::move(goals));
}

std::optional<std::vector<int>> dfa_intersection_witness(const std::vector<FlatDfa>& dfas,
                                                         std::size_t state_budget) {
    if (dfas.empty()) throw std::invalid_argument("dfa_intersection_witness: no input DFAs");
    const std::vector<std::string>& alphabet = dfas[0].alphabet;
    std::vector<FlatDfa> aligned;
    aligned.reserve(dfas.size());
    for (const FlatDfa& dfa : dfas) aligned.push_back(remap_alphabet(dfa, alphabet));

    const int symbols = static_cast<int>(alphabet.size());
    auto all_accepting = [&](const std::vector<StateId>& tuple) {
        for (std::size_t i = 0; i < aligned.size(); ++i)
            if (!aligned[i].accepting[tuple[i]]) return false;
        return true;
    };

    std::map<std::vector<StateId>, int> ids;
    std::vector<std::vector<StateId>> tuples;
    std::vector<int> from, via;
    std::vector<char> seen;
    auto intern = [&](const std::vector<StateId>& tuple) {
        auto [it, fresh] = ids.try_emplace(tuple, static_cast<int>(tuples.size()));
        if (fresh) {
            if (tuples.size() >= state_budget) throw SizeBudgetExceeded(state_budget);
            tuples.push_back(tuple);
            from.push_back(-1);
            via.push_back(-1);
            seen.push_back(0);
        }
        return it->second;
    };
    auto word_to = [&](int v) {
        std::vector<int> word;
        for (int x = v; from[x] != -1; x = from[x]) word.push_back(via[x]);
        std::reverse(word.begin(), word.end());
        return word;
    };

    std::vector<StateId> start(aligned.size());
    for (std::size_t i = 0; i < aligned.size(); ++i) start[i] = aligned[i].initial;
    const int root = intern(start);
    seen[root] = 1;
    if (all_accepting(start)) return word_to(root);

    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int s = 0; s < symbols; ++s) {
            std::vector<StateId> next(aligned.size());
            for (std::size_t i = 0; i < aligned.size(); ++i) next[i] = aligned[i].step(tuples[v][i], s);
            const int u = intern(next);
            if (seen[u]) continue;
            seen[u] = 1;
            from[u] = v;
            via[u] = s;
            if (all_accepting(next)) return word_to(u);
            queue.push_back(u);
        }
    }
    return std::nullopt;
}

} // namespace wne
