#ifndef WNE_SAFETY_HPP
#define WNE_SAFETY_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wne/game.hpp"

namespace wne {

class DeviatorHasSingletonAlphabet : public std::invalid_argument {
public:
    explicit DeviatorHasSingletonAlphabet(int agent)
        : std::invalid_argument("agent " + std::to_string(agent) +
                                " has a single action and admits no deviant traces"),
          agent_(agent) {}
    int agent() const { return agent_; }

private:
    int agent_;
};

class UnknownState : public std::invalid_argument {
public:
    explicit UnknownState(StateId q)
        : std::invalid_argument("unknown state id " + std::to_string(q)) {}
};

/// Two-player safety game for a potential deviator j.
///
/// Player 0 owns the goal-DFA states of agent j and proposes a joint letter;
/// Player 1 overrides agent j's component. Player-1 nodes are keyed by
/// (state, projected letter): the letters a Player-1 node can resolve to
/// depend only on the projection, so nodes sharing it are bisimilar and
/// collapsing them shrinks the arena by a factor |Sigma_j|.
///
/// Accepting states of agent j are dead ends (no outgoing edges); getting
/// stuck loses for Player 0.
struct SafetyArena {
    int deviator = -1;
    int num_states = 0;  ///< |Q^j|
    int num_proj = 0;    ///< distinct projected letters
    int num_own = 0;     ///< |Sigma_j|
    std::vector<bool> dead_end;     ///< per DFA state: q in F^j
    std::vector<StateId> p1_target; ///< (q*num_proj + p)*num_own + c -> delta^j(q, letter)

    // Node ids: p0 nodes are 0..num_states-1, p1 nodes follow.
    int p0_count() const { return num_states; }
    int p1_count() const { return num_states * num_proj; }
    int node_count() const { return p0_count() + p1_count(); }
    bool is_p1(int node) const { return node >= num_states; }
    int p1_node(StateId q, ProjId p) const { return num_states + q * num_proj + p; }

    int out_degree(int node) const {
        if (is_p1(node)) return num_own;
        return dead_end[node] ? 0 : num_proj;
    }
    template <typename Fn>
    void for_each_successor(int node, Fn&& fn) const {
        if (is_p1(node)) {
            const int base = (node - num_states) * num_own;
            for (int c = 0; c < num_own; ++c) fn(p1_target[base + c]);
        } else if (!dead_end[node]) {
            for (ProjId p = 0; p < num_proj; ++p) fn(p1_node(node, p));
        }
    }

    long long edge_count() const;
};

/// Builds G_j for deviator j. Throws DeviatorHasSingletonAlphabet when
/// |Sigma_j| < 2; such agents have no deviant traces and callers skip them.
SafetyArena build_safety_arena(const GameSpec& game, int deviator);

struct SafetySolution {
    int deviator = -1;
    int num_states = 0;
    int num_proj = 0;
    std::vector<bool> accepting;  ///< F^j flags, copied for membership queries
    std::vector<bool> win0;       ///< over arena nodes, p0 first then p1
    std::vector<ProjId> strategy; ///< per p0 node: least winning move, or -1

    bool winning_state(StateId q) const { return win0[q]; }
    bool winning_p1(StateId q, ProjId p) const { return win0[num_states + q * num_proj + p]; }
};

/// Backward fixpoint with out-degree counters: win0 is the complement of
/// Player 1's attractor to the dead ends. O(|V| + |E|). The strategy picks,
/// per winning Player-0 node, the least projected letter staying in win0.
SafetySolution solve_safety(const SafetyArena& arena);

/// True iff proposing `letter` at state q is a winning Player-0 move, i.e.
/// the Player-1 node (q, letter projected) is in win0. Dead ends are never
/// winning. Throws UnknownState for out-of-range q.
bool winning_moves(const GameSpec& game, const SafetySolution& solution, StateId q, LetterId letter);

/// Line-oriented debug dump: one line per node with owner and successors.
void dump_arena(const GameSpec& game, const SafetyArena& arena, std::ostream& out);

} // namespace wne

#endif
