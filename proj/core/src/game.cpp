#include "wne/game.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace wne {

namespace {

constexpr int kMaxAgents = 30;
constexpr long long kMaxJointLetters = 1 << 24;

std::string issue_summary(const std::vector<ValidationIssue>& issues) {
    std::ostringstream out;
    out << "invalid game (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
    for (const auto& issue : issues) out << "\n  - " << issue.message;
    return out.str();
}

} // namespace

std::vector<int> set_to_list(AgentSet s) {
    std::vector<int> agents;
    for (int i = 0; s >> i; ++i)
        if (set_contains(s, i)) agents.push_back(i);
    return agents;
}

AgentSet set_from_list(const std::vector<int>& agents) {
    AgentSet s = 0;
    for (int a : agents) s = set_with(s, a);
    return s;
}

std::string format_agent_set(AgentSet s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int a : set_to_list(s)) {
        if (!first) out << ',';
        out << a;
        first = false;
    }
    out << '}';
    return out.str();
}

ProjectedLetter project_out(const Letter& letter, int agent) {
    if (agent < 0 || agent >= static_cast<int>(letter.actions.size()))
        throw std::invalid_argument("project_out: agent " + std::to_string(agent) + " out of range");
    ProjectedLetter p;
    p.removed_agent = agent;
    p.actions.reserve(letter.actions.size() - 1);
    for (int i = 0; i < static_cast<int>(letter.actions.size()); ++i)
        if (i != agent) p.actions.push_back(letter.actions[i]);
    return p;
}

std::vector<StateId> dfa_run(const GoalDfa& dfa, std::span<const LetterId> word) {
    std::vector<StateId> run;
    run.reserve(word.size() + 1);
    StateId q = dfa.initial;
    run.push_back(q);
    for (LetterId a : word) {
        q = dfa.step(q, a);
        run.push_back(q);
    }
    return run;
}

bool lasso_satisfies(const GoalDfa& dfa, const Lasso& lasso) {
    if (lasso.cycle.empty()) throw std::invalid_argument("lasso_satisfies: empty cycle");
    StateId q = dfa.initial;
    for (LetterId a : lasso.prefix) {
        q = dfa.step(q, a);
        if (dfa.is_accepting(q)) return true;
    }
    for (int round = 0; round < dfa.num_states(); ++round) {
        for (LetterId a : lasso.cycle) {
            q = dfa.step(q, a);
            if (dfa.is_accepting(q)) return true;
        }
    }
    return false;
}

GameSpec::GameSpec(std::vector<std::vector<std::string>> actions, std::vector<GoalDfa> goals)
    : actions_(std::move(actions)), goals_(std::move(goals)) {
    const int k = num_agents();
    stride_.assign(k, 1);
    long long letters = 1;
    for (int i = k - 1; i >= 0; --i) {
        stride_[i] = letters;
        letters *= static_cast<long long>(actions_[i].size());
    }
    num_letters_ = static_cast<int>(letters);
    for (const GoalDfa& g : goals_)
        if (g.num_letters != num_letters_)
            throw std::invalid_argument("GameSpec: goal alphabet size does not match joint alphabet");
}

Letter GameSpec::letter_tuple(LetterId letter) const {
    Letter t;
    t.actions.resize(num_agents());
    for (int i = 0; i < num_agents(); ++i) t.actions[i] = letter_action(letter, i);
    return t;
}

LetterId GameSpec::letter_id(const Letter& letter) const {
    if (static_cast<int>(letter.actions.size()) != num_agents())
        throw std::invalid_argument("letter_id: wrong arity");
    long long id = 0;
    for (int i = 0; i < num_agents(); ++i) {
        if (letter.actions[i] < 0 || letter.actions[i] >= action_count(i))
            throw std::invalid_argument("letter_id: action out of range for agent " + std::to_string(i));
        id += letter.actions[i] * stride_[i];
    }
    return static_cast<LetterId>(id);
}

ProjectedLetter GameSpec::projected_tuple(ProjId proj, int agent) const {
    ProjectedLetter p;
    p.removed_agent = agent;
    // Expand via any letter with this projection; the removed slot is ignored.
    LetterId letter = unproject(proj, agent, 0);
    for (int i = 0; i < num_agents(); ++i)
        if (i != agent) p.actions.push_back(letter_action(letter, i));
    return p;
}

std::string GameSpec::format_letter(LetterId letter) const {
    std::ostringstream out;
    out << '(';
    for (int i = 0; i < num_agents(); ++i) {
        if (i) out << ',';
        out << action_name(i, letter_action(letter, i));
    }
    out << ')';
    return out.str();
}

std::string GameSpec::format_projected(ProjId proj, int agent) const {
    ProjectedLetter p = projected_tuple(proj, agent);
    std::ostringstream out;
    out << '(';
    int slot = 0;
    for (int i = 0; i < num_agents(); ++i) {
        if (i == agent) continue;
        if (slot) out << ',';
        out << action_name(i, p.actions[slot]);
        ++slot;
    }
    out << ')';
    return out.str();
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(issue_summary(issues)), issues_(std::move(issues)) {}

namespace {

std::string format_name_letter(const std::vector<std::string>& letter) {
    std::string out = "(";
    for (std::size_t i = 0; i < letter.size(); ++i) {
        if (i) out += ',';
        out += letter[i];
    }
    out += ')';
    return out;
}

} // namespace

std::vector<ValidationIssue> check_game(const RawGame& raw) {
    std::vector<ValidationIssue> issues;
    auto add = [&](ValidationCode code, std::string msg) {
        issues.push_back(ValidationIssue{code, std::move(msg)});
    };

    const int k = static_cast<int>(raw.actions.size());
    if (k == 0) {
        add(ValidationCode::NoAgents, "a game needs at least one agent");
        return issues;
    }
    if (k > kMaxAgents) {
        add(ValidationCode::TooManyAgents,
            "more than " + std::to_string(kMaxAgents) + " agents are not supported");
        return issues;
    }

    long long joint = 1;
    for (int i = 0; i < k; ++i) {
        if (raw.actions[i].empty())
            add(ValidationCode::EmptyAlphabet, "agent " + std::to_string(i) + " has no actions");
        std::set<std::string> seen;
        for (const std::string& a : raw.actions[i])
            if (!seen.insert(a).second)
                add(ValidationCode::DuplicateAction,
                    "agent " + std::to_string(i) + " lists action '" + a + "' twice");
        joint *= std::max<long long>(1, static_cast<long long>(raw.actions[i].size()));
    }
    if (joint > kMaxJointLetters)
        add(ValidationCode::AlphabetTooLarge,
            "joint alphabet has " + std::to_string(joint) + " letters (limit " +
                std::to_string(kMaxJointLetters) + ")");
    if (!issues.empty()) return issues;

    std::vector<const RawGoal*> goal_of(k, nullptr);
    for (const RawGoal& g : raw.goals) {
        if (g.agent < 0 || g.agent >= k) {
            add(ValidationCode::UnknownAgent, "goal refers to unknown agent " + std::to_string(g.agent));
            continue;
        }
        if (goal_of[g.agent]) {
            add(ValidationCode::DuplicateGoal, "agent " + std::to_string(g.agent) + " has two goals");
            continue;
        }
        goal_of[g.agent] = &g;
    }
    for (int i = 0; i < k; ++i)
        if (!goal_of[i]) add(ValidationCode::MissingGoal, "agent " + std::to_string(i) + " has no goal");
    if (!issues.empty()) return issues;

    for (int i = 0; i < k; ++i) {
        const RawGoal& g = *goal_of[i];
        const std::string ctx = "goal of agent " + std::to_string(i) + ": ";

        if (g.states.empty()) {
            add(ValidationCode::NoStates, ctx + "no states");
            continue;
        }
        std::map<std::string, int> state_id;
        for (const std::string& s : g.states)
            if (!state_id.emplace(s, static_cast<int>(state_id.size())).second)
                add(ValidationCode::DuplicateState, ctx + "state '" + s + "' listed twice");

        auto lookup = [&](const std::string& s) -> int {
            auto it = state_id.find(s);
            return it == state_id.end() ? -1 : it->second;
        };
        if (lookup(g.initial) < 0)
            add(ValidationCode::UnknownState, ctx + "initial state '" + g.initial + "' is not a state");
        bool initial_accepting = false;
        for (const std::string& s : g.accepting) {
            if (lookup(s) < 0)
                add(ValidationCode::UnknownState, ctx + "accepting state '" + s + "' is not a state");
            else if (s == g.initial)
                initial_accepting = true;
        }
        if (initial_accepting)
            add(ValidationCode::AcceptingInitialState,
                ctx + "initial state '" + g.initial + "' is accepting; goals must not be satisfied by the empty trace");

        // Resolve transitions; -1 marks missing entries.
        std::vector<std::map<std::string, int>> action_id(k);
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < static_cast<int>(raw.actions[j].size()); ++a)
                action_id[j][raw.actions[j][a]] = a;

        const long long num_states = static_cast<long long>(g.states.size());
        std::vector<long long> target(static_cast<std::size_t>(num_states * joint), -1);
        std::vector<int> source_index(static_cast<std::size_t>(num_states * joint), -1);

        for (const RawTransition& t : g.transitions) {
            const std::string where =
                ctx + "transitions[" + std::to_string(t.index) + "]";
            int from = lookup(t.from);
            int to = lookup(t.to);
            if (from < 0)
                add(ValidationCode::UnknownState, where + ": unknown source state '" + t.from + "'");
            if (to < 0)
                add(ValidationCode::UnknownState, where + ": unknown target state '" + t.to + "'");
            if (static_cast<int>(t.letter.size()) != k) {
                add(ValidationCode::BadLetterArity,
                    where + ": letter has " + std::to_string(t.letter.size()) + " components, expected " +
                        std::to_string(k));
                continue;
            }
            long long letter = 0;
            bool letter_ok = true;
            for (int j = 0; j < k; ++j) {
                auto it = action_id[j].find(t.letter[j]);
                if (it == action_id[j].end()) {
                    add(ValidationCode::UnknownActionInTransition,
                        where + ": '" + t.letter[j] + "' is not an action of agent " + std::to_string(j));
                    letter_ok = false;
                    break;
                }
                letter = letter * static_cast<long long>(raw.actions[j].size()) + it->second;
            }
            if (!letter_ok || from < 0 || to < 0) continue;
            const std::size_t slot = static_cast<std::size_t>(from * joint + letter);
            if (target[slot] == -1) {
                target[slot] = to;
                source_index[slot] = t.index;
            } else if (target[slot] != to) {
                add(ValidationCode::ConflictingTransition,
                    ctx + "transitions[" + std::to_string(source_index[slot]) + "] and transitions[" +
                        std::to_string(t.index) + "] map ('" + t.from + "', " +
                        format_name_letter(t.letter) + ") to different targets");
            }
        }

        for (long long q = 0; q < num_states; ++q)
            for (long long a = 0; a < joint; ++a)
                if (target[static_cast<std::size_t>(q * joint + a)] == -1) {
                    std::vector<std::string> names;
                    long long rest = a;
                    std::vector<int> digits(k);
                    for (int j = k - 1; j >= 0; --j) {
                        digits[j] = static_cast<int>(rest % raw.actions[j].size());
                        rest /= static_cast<long long>(raw.actions[j].size());
                    }
                    for (int j = 0; j < k; ++j) names.push_back(raw.actions[j][digits[j]]);
                    add(ValidationCode::NonTotalTransition,
                        ctx + "no transition from state '" + g.states[q] + "' on letter " +
                            format_name_letter(names));
                }
    }
    return issues;
}

GameSpec validate_game(const RawGame& raw) {
    std::vector<ValidationIssue> issues = check_game(raw);
    if (!issues.empty()) throw ValidationError(std::move(issues));

    const int k = static_cast<int>(raw.actions.size());
    std::vector<const RawGoal*> goal_of(k, nullptr);
    for (const RawGoal& g : raw.goals) goal_of[g.agent] = &g;

    long long joint = 1;
    for (int i = 0; i < k; ++i) joint *= static_cast<long long>(raw.actions[i].size());

    std::vector<std::map<std::string, int>> action_id(k);
    for (int j = 0; j < k; ++j)
        for (int a = 0; a < static_cast<int>(raw.actions[j].size()); ++a)
            action_id[j][raw.actions[j][a]] = a;

    std::vector<GoalDfa> goals;
    goals.reserve(k);
    for (int i = 0; i < k; ++i) {
        const RawGoal& g = *goal_of[i];
        GoalDfa dfa;
        dfa.state_names = g.states;
        dfa.num_letters = static_cast<int>(joint);
        std::map<std::string, int> state_id;
        for (const std::string& s : g.states) state_id.emplace(s, static_cast<int>(state_id.size()));
        dfa.initial = state_id[g.initial];
        dfa.accepting.assign(g.states.size(), false);
        for (const std::string& s : g.accepting) dfa.accepting[state_id[s]] = true;
        dfa.delta.assign(g.states.size() * static_cast<std::size_t>(joint), -1);
        for (const RawTransition& t : g.transitions) {
            long long letter = 0;
            for (int j = 0; j < k; ++j)
                letter = letter * static_cast<long long>(raw.actions[j].size()) + action_id[j][t.letter[j]];
            dfa.delta[static_cast<std::size_t>(state_id[t.from] * joint + letter)] = state_id[t.to];
        }
        goals.push_back(std::move(dfa));
    }
    return GameSpec(raw.actions, std::move(goals));
}

} // namespace wne
