#include "wne/synthesis.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace wne {

namespace {

// Deviator components of a product state; trace modes behave identically
// whenever these agree, because every other piece of the product state is
// irrelevant to the transducer's outputs and deviation entries.
std::vector<StateId> deviator_view(const AwState& s, const std::vector<int>& deviators) {
    std::vector<StateId> view;
    view.reserve(deviators.size());
    for (int j : deviators) view.push_back(s.components[j]);
    return view;
}

} // namespace

ProfileTransducer synthesize_profile(const GameSpec& game, AgentSet w, const Lasso& lasso,
                                     const std::vector<std::optional<SafetySolution>>& solutions) {
    if (lasso.cycle.empty()) throw std::invalid_argument("synthesize_profile: empty cycle");
    const int L = game.num_letters();

    std::vector<int> deviators;
    for (int j = 0; j < game.num_agents(); ++j)
        if (!set_contains(w, j) && game.action_count(j) >= 2) {
            if (static_cast<int>(solutions.size()) <= j || !solutions[j]) throw MissingSolution(j);
            deviators.push_back(j);
        }

    // Run the restricted automaton along prefix . cycle^t, recording the
    // state before every position, until the state at a cycle boundary
    // repeats. This both checks the acceptance precondition and yields the
    // unrolling at which the run itself becomes periodic.
    AwState s = aw_initial(game, w);
    for (int j : deviators)
        if (!solutions[j]->winning_state(s.components[j]))
            throw LassoNotAccepting("initial state is outside a deviator's winning region");

    std::vector<AwState> before;  // state before consuming position p
    std::vector<AwState> boundaries{};
    std::unordered_map<AwState, int, AwStateHash> boundary_index;
    for (LetterId a : lasso.prefix) {
        before.push_back(s);
        std::optional<AwState> next = apw_step(game, w, solutions, s, a);
        if (!next) throw LassoNotAccepting("stuck on the prefix at " + game.format_letter(a));
        s = std::move(*next);
    }
    int repeat_at = -1;
    while (true) {
        auto [it, fresh] = boundary_index.try_emplace(s, static_cast<int>(boundaries.size()));
        if (!fresh) {
            repeat_at = it->second;
            break;
        }
        boundaries.push_back(s);
        for (LetterId a : lasso.cycle) {
            before.push_back(s);
            std::optional<AwState> next = apw_step(game, w, solutions, s, a);
            if (!next) throw LassoNotAccepting("stuck on the cycle at " + game.format_letter(a));
            s = std::move(*next);
        }
    }
    // Pending only shrinks, so the stable pending set is the one at the
    // repeated boundary; acceptance means it is empty.
    if (boundaries[repeat_at].pending != 0)
        throw LassoNotAccepting("goals " + format_agent_set(boundaries[repeat_at].pending) +
                                " are never satisfied on the primary trace");

    // The transducer only depends on deviator components, so unroll just far
    // enough for those to repeat at a cycle boundary; this keeps the mode
    // count minimal for the common case of an already synchronized lasso.
    int from = -1, to = -1;
    {
        std::map<std::vector<StateId>, int> seen;
        for (int b = 0; b < static_cast<int>(boundaries.size()) && from < 0; ++b) {
            auto [it, fresh] = seen.try_emplace(deviator_view(boundaries[b], deviators), b);
            if (!fresh) {
                from = it->second;
                to = b;
            }
        }
        if (from < 0) {  // first repeat is the full-state one
            from = repeat_at;
            to = static_cast<int>(boundaries.size());
        }
    }

    // Unrolled word U . V with |U| = |prefix| + from * |cycle|.
    const int stem_len = static_cast<int>(lasso.prefix.size()) + from * static_cast<int>(lasso.cycle.size());
    const int loop_len = (to - from) * static_cast<int>(lasso.cycle.size());
    std::vector<LetterId> word = lasso.prefix;
    for (int rep = 0; rep < to; ++rep) word.insert(word.end(), lasso.cycle.begin(), lasso.cycle.end());

    ProfileTransducer t;
    t.num_letters = L;
    const int trace_count = stem_len + loop_len;
    t.modes.resize(trace_count);

    const int sink = trace_count;  // allocated after all trace modes
    std::map<std::pair<int, StateId>, int> dev_mode;  // (agent, DFA state) -> mode id
    std::deque<std::pair<int, StateId>> dev_queue;
    auto dev_mode_id = [&](int agent, StateId q) {
        auto [it, fresh] = dev_mode.try_emplace({agent, q}, 0);
        if (fresh) {
            it->second = sink + static_cast<int>(dev_mode.size());
            dev_queue.emplace_back(agent, q);
        }
        return it->second;
    };

    for (int p = 0; p < trace_count; ++p) {
        ProfileTransducer::Mode& mode = t.modes[p];
        mode.output = word[p];
        mode.label = "t" + std::to_string(p);
        mode.next.assign(L, sink);
        const int on_trace = (p + 1 == trace_count) ? stem_len : p + 1;
        for (LetterId o = 0; o < L; ++o) {
            if (o == word[p]) {
                mode.next[o] = on_trace;
                continue;
            }
            int diff = -1;
            bool multi = false;
            for (int i = 0; i < game.num_agents(); ++i)
                if (game.letter_action(o, i) != game.letter_action(word[p], i)) {
                    if (diff >= 0) {
                        multi = true;
                        break;
                    }
                    diff = i;
                }
            if (multi || set_contains(w, diff)) continue;  // sink
            // Single deviation by agent `diff`: start tracking its goal DFA.
            mode.next[o] = dev_mode_id(diff, game.goal(diff).step(before[p].components[diff], o));
        }
    }

    t.modes.push_back({});  // sink
    t.modes[sink].output = 0;
    t.modes[sink].label = "sink";
    t.modes[sink].next.assign(L, sink);

    while (!dev_queue.empty()) {
        auto [agent, q] = dev_queue.front();
        dev_queue.pop_front();
        const SafetySolution& sol = *solutions[agent];
        const GoalDfa& dfa = game.goal(agent);

        ProfileTransducer::Mode mode;
        mode.label = "d" + std::to_string(agent) + ":" + dfa.state_names[q];
        // Winning moves exist from every reachable tracking state; the
        // deviator's own component of the output is immaterial.
        const ProjId move = sol.strategy[q];
        if (move < 0) throw std::logic_error("synthesize_profile: tracking state outside winning region");
        mode.output = game.unproject(move, agent, 0);
        mode.next.assign(L, sink);
        for (LetterId o = 0; o < L; ++o) {
            if (game.project(o, agent) != move) continue;  // another agent departed: sink
            mode.next[o] = dev_mode_id(agent, dfa.step(q, o));
        }
        t.modes.push_back(std::move(mode));
    }

    t.initial = 0;
    return t;
}

VerifyReport verify_profile(const GameSpec& game, AgentSet w, const ProfileTransducer& t) {
    VerifyReport report;
    if (t.num_letters != game.num_letters() || t.modes.empty())
        throw std::invalid_argument("verify_profile: transducer does not match the game's alphabet");
    if (t.initial < 0 || t.initial >= t.mode_count())
        throw std::invalid_argument("verify_profile: initial mode out of range");
    for (const ProfileTransducer::Mode& mode : t.modes) {
        if (static_cast<int>(mode.next.size()) != t.num_letters ||
            mode.output < 0 || mode.output >= t.num_letters)
            throw std::invalid_argument("verify_profile: malformed mode table");
        for (int target : mode.next)
            if (target < 0 || target >= t.mode_count())
                throw std::invalid_argument("verify_profile: mode successor out of range");
    }

    // Primary trace: everyone plays the output, so the mode sequence is a
    // lasso; it must close within mode_count() + 1 steps.
    {
        std::vector<int> first_seen(t.mode_count(), -1);
        std::vector<LetterId> emitted;
        int mode = t.initial;
        while (first_seen[mode] < 0) {
            first_seen[mode] = static_cast<int>(emitted.size());
            emitted.push_back(t.output(mode));
            mode = t.step(mode, t.output(mode));
        }
        const int split = first_seen[mode];
        report.primary.prefix.assign(emitted.begin(), emitted.begin() + split);
        report.primary.cycle.assign(emitted.begin() + split, emitted.end());

        report.primary_satisfied = 0;
        for (int i = 0; i < game.num_agents(); ++i)
            if (lasso_satisfies(game.goal(i), report.primary))
                report.primary_satisfied = set_with(report.primary_satisfied, i);
        report.primary_ok = report.primary_satisfied == w;
    }

    // Deviant traces, one deviator at a time: exact reachability over
    // (mode, goal state of j).
    for (int j = 0; j < game.num_agents(); ++j) {
        if (set_contains(w, j) || game.action_count(j) < 2) continue;
        const GoalDfa& dfa = game.goal(j);
        const int states = dfa.num_states();
        auto id = [&](int mode, StateId q) { return mode * states + q; };

        std::vector<char> visited(static_cast<std::size_t>(t.mode_count()) * states, 0);
        std::vector<int> from(visited.size(), -1);
        std::vector<LetterId> via(visited.size(), -1);
        std::deque<int> queue;
        const int start = id(t.initial, dfa.initial);
        visited[start] = 1;
        queue.push_back(start);
        bool failed = false;

        while (!queue.empty() && !failed) {
            const int v = queue.front();
            queue.pop_front();
            const int mode = v / states;
            const StateId q = v % states;
            for (int c = 0; c < game.action_count(j); ++c) {
                const LetterId observed =
                    game.unproject(game.project(t.output(mode), j), j, c);
                const StateId q2 = dfa.step(q, observed);
                if (dfa.is_accepting(q2)) {
                    DeviationFailure f;
                    f.agent = j;
                    for (int x = v; x != start; x = from[x]) f.word.push_back(via[x]);
                    std::reverse(f.word.begin(), f.word.end());
                    f.word.push_back(observed);
                    report.deviation_failures.push_back(std::move(f));
                    failed = true;
                    break;
                }
                const int u = id(t.step(mode, observed), q2);
                if (visited[u]) continue;
                visited[u] = 1;
                from[u] = v;
                via[u] = observed;
                queue.push_back(u);
            }
        }
    }
    return report;
}

} // namespace wne
