#ifndef WNE_SYNTHESIS_HPP
#define WNE_SYNTHESIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wne/equilibrium.hpp"
#include "wne/game.hpp"
#include "wne/safety.hpp"

namespace wne {

class LassoNotAccepting : public std::runtime_error {
public:
    explicit LassoNotAccepting(const std::string& why)
        : std::runtime_error("lasso is not an accepting word of the restricted automaton: " + why) {}
};

/// Finite-state strategy profile: every mode outputs one joint letter and
/// reads the letter actually played to pick the next mode.
///
/// Mode kinds:
///   - trace modes play the witness lasso and loop through its cycle;
///   - a deviation by a single agent j outside W moves to a j-tracking mode
///     that follows the winning safety strategy for j (agent j's own output
///     component is fixed to its least action; deviant-trace semantics do
///     not constrain it);
///   - observations departing from the profile at an agent in W or at two
///     or more agents move to a sink mode with a fixed output.
struct ProfileTransducer {
    struct Mode {
        LetterId output = 0;
        std::vector<int> next;  ///< per observed letter, canonical order
        std::string label;
    };
    std::vector<Mode> modes;
    int initial = 0;
    int num_letters = 0;

    int mode_count() const { return static_cast<int>(modes.size()); }
    LetterId output(int mode) const { return modes[mode].output; }
    int step(int mode, LetterId observed) const { return modes[mode].next[observed]; }
};

/// Builds the profile transducer from a witness lasso and the deviators'
/// positional safety strategies. The lasso must be an accepting word of the
/// restricted word automaton for (game, W); otherwise LassoNotAccepting.
ProfileTransducer synthesize_profile(const GameSpec& game, AgentSet w, const Lasso& lasso,
                                     const std::vector<std::optional<SafetySolution>>& solutions);

struct DeviationFailure {
    int agent = -1;
    std::vector<LetterId> word;  ///< deviant observation sequence reaching the goal
};

struct VerifyReport {
    bool primary_ok = false;
    Lasso primary;                 ///< primary trace extracted from the transducer
    AgentSet primary_satisfied = 0;///< goals satisfied on the primary trace
    std::vector<DeviationFailure> deviation_failures;
    bool passed() const { return primary_ok && deviation_failures.empty(); }
};

/// Checks a claimed profile against the equilibrium definition.
///
/// (1) Primary trace: the mode sequence cycles within mode_count()+1 steps;
///     the emitted lasso must satisfy exactly the goals in W.
/// (2) Per deviator j outside W: exact reachability over the finite product
///     (mode, goal-DFA state of j) where agent j's observed component ranges
///     over its whole alphabet and every other component follows the
///     transducer's output; no reachable state may hold an accepting
///     j-component. Failures carry the deviant word as a counterexample.
VerifyReport verify_profile(const GameSpec& game, AgentSet w, const ProfileTransducer& transducer);

} // namespace wne

#endif
