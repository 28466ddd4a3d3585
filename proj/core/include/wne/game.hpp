#ifndef WNE_GAME_HPP
#define WNE_GAME_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wne {

using LetterId = int;  ///< joint letter, encoded in canonical mixed-radix order
using ProjId = int;    ///< joint letter with one agent's component removed
using StateId = int;
using AgentSet = std::uint32_t;  ///< bitmask over agent ids

constexpr bool set_contains(AgentSet s, int agent) { return (s >> agent) & 1u; }
constexpr AgentSet set_with(AgentSet s, int agent) { return s | (AgentSet{1} << agent); }
constexpr AgentSet set_without(AgentSet s, int agent) { return s & ~(AgentSet{1} << agent); }
constexpr AgentSet full_set(int num_agents) { return (AgentSet{1} << num_agents) - 1u; }

std::vector<int> set_to_list(AgentSet s);
AgentSet set_from_list(const std::vector<int>& agents);
std::string format_agent_set(AgentSet s);

/// One joint decision: an action index for every agent, in agent order.
struct Letter {
    std::vector<int> actions;
    bool operator==(const Letter&) const = default;
};

/// A joint letter with one agent's component removed.
struct ProjectedLetter {
    int removed_agent = -1;
    std::vector<int> actions;
    bool operator==(const ProjectedLetter&) const = default;
};

/// Drops agent j's component. Two letters project equally iff they agree
/// everywhere except possibly at j.
ProjectedLetter project_out(const Letter& letter, int agent);

/// Deterministic, complete automaton over joint letters. Rows are indexed
/// q * num_letters + letter; completeness is enforced by validation.
struct GoalDfa {
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<bool> accepting;
    int num_letters = 0;
    std::vector<StateId> delta;

    int num_states() const { return static_cast<int>(state_names.size()); }
    StateId step(StateId q, LetterId a) const { return delta[static_cast<std::size_t>(q) * num_letters + a]; }
    bool is_accepting(StateId q) const { return accepting[q]; }

    bool operator==(const GoalDfa&) const = default;
};

/// States visited while reading `word` from the initial state; the result has
/// word.size() + 1 entries and starts with the initial state.
std::vector<StateId> dfa_run(const GoalDfa& dfa, std::span<const LetterId> word);

/// Ultimately periodic word prefix . cycle^w; the cycle must be nonempty.
struct Lasso {
    std::vector<LetterId> prefix;
    std::vector<LetterId> cycle;
    bool operator==(const Lasso&) const = default;
};

/// True iff some nonempty finite prefix of prefix.cycle^w is accepted.
/// Simulating |prefix| + |cycle| * |Q| letters decides this: the state at
/// consecutive cycle boundaries must repeat within |Q| periods.
bool lasso_satisfies(const GoalDfa& dfa, const Lasso& lasso);

/// A validated game: per-agent action alphabets plus one goal DFA per agent
/// over the joint alphabet. Joint letters are canonically ordered by the
/// action indices with agent 0 most significant, so LetterId order is the
/// canonical letter order used for deterministic witnesses and tie-breaking.
class GameSpec {
public:
    GameSpec() = default;
    GameSpec(std::vector<std::vector<std::string>> actions, std::vector<GoalDfa> goals);

    int num_agents() const { return static_cast<int>(actions_.size()); }
    int num_letters() const { return num_letters_; }
    int action_count(int agent) const { return static_cast<int>(actions_[agent].size()); }
    const std::vector<std::vector<std::string>>& actions() const { return actions_; }
    const std::string& action_name(int agent, int action) const { return actions_[agent][action]; }
    const std::vector<GoalDfa>& goals() const { return goals_; }
    const GoalDfa& goal(int agent) const { return goals_[agent]; }

    int letter_action(LetterId letter, int agent) const {
        return static_cast<int>((letter / stride_[agent]) % action_count(agent));
    }
    Letter letter_tuple(LetterId letter) const;
    LetterId letter_id(const Letter& letter) const;

    int num_projected(int agent) const { return num_letters_ / action_count(agent); }
    ProjId project(LetterId letter, int agent) const {
        const long long s = stride_[agent];
        const long long high = letter / (s * action_count(agent));
        return static_cast<ProjId>(high * s + letter % s);
    }
    LetterId unproject(ProjId proj, int agent, int action) const {
        const long long s = stride_[agent];
        const long long high = proj / s;
        return static_cast<LetterId>((high * action_count(agent) + action) * s + proj % s);
    }
    ProjectedLetter projected_tuple(ProjId proj, int agent) const;

    std::string format_letter(LetterId letter) const;
    std::string format_projected(ProjId proj, int agent) const;

    bool operator==(const GameSpec& other) const {
        return actions_ == other.actions_ && goals_ == other.goals_;
    }

private:
    std::vector<std::vector<std::string>> actions_;
    std::vector<GoalDfa> goals_;
    std::vector<long long> stride_;
    int num_letters_ = 0;
};

enum class ValidationCode {
    NoAgents,
    TooManyAgents,
    EmptyAlphabet,
    AlphabetTooLarge,
    DuplicateAction,
    MissingGoal,
    DuplicateGoal,
    UnknownAgent,
    NoStates,
    DuplicateState,
    UnknownState,
    AcceptingInitialState,
    BadLetterArity,
    UnknownActionInTransition,
    ConflictingTransition,
    NonTotalTransition,
};

struct ValidationIssue {
    ValidationCode code;
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Unvalidated game description with transitions given by name. Wildcards
/// have already been expanded at this level (see json_io).
struct RawTransition {
    std::string from;
    std::vector<std::string> letter;
    std::string to;
    int index = -1;  ///< position in the source transition list, for messages
};

struct RawGoal {
    int agent = -1;
    std::vector<std::string> states;
    std::string initial;
    std::vector<std::string> accepting;
    std::vector<RawTransition> transitions;
};

struct RawGame {
    std::vector<std::vector<std::string>> actions;
    std::vector<RawGoal> goals;
};

/// All violations found in `raw`; empty means validate_game will succeed.
std::vector<ValidationIssue> check_game(const RawGame& raw);

/// Builds the canonical GameSpec or throws ValidationError carrying every
/// violation found.
GameSpec validate_game(const RawGame& raw);

} // namespace wne

#endif
