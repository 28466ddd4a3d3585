#ifndef WNE_ORACLE_HPP
#define WNE_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wne/errors.hpp"
#include "wne/game.hpp"

namespace wne {

/// Explicit Buchi tree automaton recognizing exactly the equilibrium
/// strategy trees for a queried winning set: label and direction alphabets
/// are both the joint alphabet. Built for small instances only; this is the
/// independent oracle the word-automaton pipeline is checked against.
///
/// State classes:
///   - product states: the word automaton ran along the primary trace
///     (reachable ones only);
///   - one block of goal-DFA states per deviator j, tracking a j-deviation;
///   - a self-looping accepting state for directions irrelevant to the
///     equilibrium conditions.
/// Transitions are partial: an entry is undefined exactly where a deviator's
/// component would enter its accepting set, and an undefined entry means the
/// run is rejecting on that path.
struct TwAutomaton {
    int num_letters = 0;
    int num_states = 0;
    int initial = -1;
    int accept_sink = -1;  ///< the self-looping accepting state
    std::vector<bool> accepting;
    std::vector<std::int32_t> tau;  ///< [state][label][direction], -1 = undefined
    std::vector<int> dev_agents;    ///< deviators with a state block, ascending
    std::vector<int> dev_block;     ///< first state id of each deviator block
    std::vector<std::string> state_label;

    std::int32_t step(int state, LetterId label, LetterId direction) const {
        return tau[(static_cast<std::size_t>(state) * num_letters + label) * num_letters + direction];
    }
    /// Tree-automaton state holding deviator block `dev_index` at DFA state q.
    int dev_state(int dev_index, StateId q) const { return dev_block[dev_index] + q; }
};

inline constexpr std::size_t kDefaultSizeBudget = 10'000'000;

/// Explicit construction; throws SizeBudgetExceeded when the transition
/// table would exceed `size_budget` entries.
TwAutomaton build_tw(const GameSpec& game, AgentSet w, std::size_t size_budget = kDefaultSizeBudget);

/// Buchi game between the label chooser (Player 0) and the direction chooser
/// (Player 1). Undefined transitions are materialized as a Player-1-winning
/// sink. Every position has at least one move.
struct BuchiGame {
    std::vector<std::uint8_t> owner;
    std::vector<bool> accepting;
    std::vector<std::vector<int>> succ;
    int num_positions() const { return static_cast<int>(owner.size()); }
};

/// Positions 0..S-1 are the tree-automaton states (Player 0 picks a label),
/// followed by (state, label) positions (Player 1 picks a direction) and the
/// rejecting sink.
BuchiGame build_buchi_game(const TwAutomaton& tw);

/// Classical iterative solution: repeatedly remove Player 1's attractor of
/// the positions from which Player 0 cannot force another visit to an
/// accepting position; what survives is Player 0's winning set.
std::vector<bool> solve_buchi_game(const BuchiGame& game);

/// Player-0 winning flags for every tree-automaton state (one game solve).
std::vector<bool> tw_nonempty_all(const TwAutomaton& tw);

/// Whether some tree is accepted when the automaton starts in `state`.
bool tw_nonempty_from(const TwAutomaton& tw, int state);

/// Tree-automaton route for the same question decide_w_ne answers.
bool oracle_decide_w_ne(const GameSpec& game, AgentSet w, std::size_t size_budget = kDefaultSizeBudget);

} // namespace wne

#endif
