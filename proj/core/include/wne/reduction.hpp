#ifndef WNE_REDUCTION_HPP
#define WNE_REDUCTION_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wne/errors.hpp"
#include "wne/game.hpp"

namespace wne {

class AlphabetMismatch : public std::invalid_argument {
public:
    explicit AlphabetMismatch(const std::string& why)
        : std::invalid_argument("input DFAs do not share an alphabet: " + why) {}
};

/// Classical DFA over a flat (unfactored) alphabet.
struct FlatDfa {
    std::vector<std::string> alphabet;
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<bool> accepting;
    std::vector<StateId> delta;  ///< state * |alphabet| + symbol

    int num_symbols() const { return static_cast<int>(alphabet.size()); }
    int num_states() const { return static_cast<int>(state_names.size()); }
    StateId step(StateId q, int symbol) const { return delta[static_cast<std::size_t>(q) * num_symbols() + symbol]; }
    bool accepts(std::span<const int> word) const;

    bool operator==(const FlatDfa&) const = default;
};

/// Extends a DFA to the alphabet with a fresh end marker and two fresh sink
/// states: reading the marker from an accepting state reaches the accepting
/// sink, from any other state the rejecting sink; both sinks self-loop on
/// every letter and only the accepting sink is accepting. The result accepts
/// exactly { w . marker . u : w in L(dfa) }.
FlatDfa hat_transform(const FlatDfa& dfa);

/// Turns a DFA-intersection-emptiness instance into a game: agent 0 plays
/// the shared alphabet plus the end marker, every other agent a singleton
/// alphabet, and agent i's goal is the transformed DFA i. The full agent set
/// admits an equilibrium iff the DFA intersection is nonempty.
GameSpec build_dfaie_game(const std::vector<FlatDfa>& dfas);

/// Shortest word (in canonical symbol order) accepted by every DFA, found
/// by BFS over the explicit product, or nothing when the intersection is
/// empty. Throws SizeBudgetExceeded when the product exceeds the budget.
std::optional<std::vector<int>> dfa_intersection_witness(const std::vector<FlatDfa>& dfas,
                                                         std::size_t state_budget = 10'000'000);

} // namespace wne

#endif
