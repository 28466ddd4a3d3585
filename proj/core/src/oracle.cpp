#include "wne/oracle.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

#include "wne/equilibrium.hpp"

namespace wne {

namespace {

// Classification of a (label, direction) pair: equal, a single-agent
// difference (the unique candidate deviator), or a difference spanning
// several agents.
struct PairClass {
    enum Kind { Same, SingleDiff, MultiDiff } kind = Same;
    int diff_agent = -1;
};

std::vector<PairClass> classify_pairs(const GameSpec& game) {
    const int L = game.num_letters();
    std::vector<PairClass> table(static_cast<std::size_t>(L) * L);
    for (LetterId alpha = 0; alpha < L; ++alpha)
        for (LetterId beta = 0; beta < L; ++beta) {
            PairClass& pc = table[static_cast<std::size_t>(alpha) * L + beta];
            if (alpha == beta) continue;
            int diff = -1;
            bool multi = false;
            for (int i = 0; i < game.num_agents(); ++i)
                if (game.letter_action(alpha, i) != game.letter_action(beta, i)) {
                    if (diff >= 0) {
                        multi = true;
                        break;
                    }
                    diff = i;
                }
            pc.kind = multi ? PairClass::MultiDiff : PairClass::SingleDiff;
            pc.diff_agent = multi ? -1 : diff;
        }
    return table;
}

std::string product_label(const GameSpec& game, const AwState& s) {
    std::ostringstream out;
    out << '(';
    for (int i = 0; i < game.num_agents(); ++i) {
        if (i) out << ',';
        out << game.goal(i).state_names[s.components[i]];
    }
    out << '|' << format_agent_set(s.pending) << ')';
    return out.str();
}

} // namespace

TwAutomaton build_tw(const GameSpec& game, AgentSet w, std::size_t size_budget) {
    const int L = game.num_letters();
    const int k = game.num_agents();

    std::vector<int> dev_agents;
    for (int j = 0; j < k; ++j)
        if (!set_contains(w, j) && game.action_count(j) >= 2) dev_agents.push_back(j);

    // Closure of the product automaton along primary-trace moves.
    std::unordered_map<AwState, int, AwStateHash> ids;
    std::vector<AwState> product_states;
    std::vector<std::vector<int>> product_succ;  // per state, per letter, -1 = stuck
    std::size_t fixed_states = 1;                // accept sink
    for (int j : dev_agents) fixed_states += game.goal(j).num_states();

    auto check_budget = [&](std::size_t product_count) {
        const std::size_t total = (product_count + fixed_states) * static_cast<std::size_t>(L) * L;
        if (total > size_budget) throw SizeBudgetExceeded(size_budget);
    };
    auto intern = [&](const AwState& s) {
        auto [it, fresh] = ids.try_emplace(s, static_cast<int>(product_states.size()));
        if (fresh) {
            check_budget(product_states.size() + 1);
            product_states.push_back(s);
        }
        return it->second;
    };

    intern(aw_initial(game, w));
    for (std::size_t v = 0; v < product_states.size(); ++v) {
        product_succ.emplace_back(L, -1);
        for (LetterId a = 0; a < L; ++a) {
            const AwState current = product_states[v];  // copy: intern may reallocate
            if (std::optional<AwState> next = aw_step(game, w, current, a))
                product_succ[v][a] = intern(*next);
        }
    }

    TwAutomaton tw;
    tw.num_letters = L;
    const int nq = static_cast<int>(product_states.size());
    tw.num_states = static_cast<int>(nq + fixed_states);
    tw.initial = 0;
    tw.accept_sink = tw.num_states - 1;
    tw.dev_agents = dev_agents;
    int next_block = nq;
    for (int j : dev_agents) {
        tw.dev_block.push_back(next_block);
        next_block += game.goal(j).num_states();
    }

    tw.accepting.assign(tw.num_states, false);
    tw.state_label.assign(tw.num_states, "");
    for (int v = 0; v < nq; ++v) {
        tw.accepting[v] = product_states[v].pending == 0;
        tw.state_label[v] = product_label(game, product_states[v]);
    }
    for (std::size_t d = 0; d < dev_agents.size(); ++d) {
        const GoalDfa& dfa = game.goal(dev_agents[d]);
        for (StateId q = 0; q < dfa.num_states(); ++q) {
            tw.accepting[tw.dev_state(static_cast<int>(d), q)] = !dfa.is_accepting(q);
            tw.state_label[tw.dev_state(static_cast<int>(d), q)] =
                "dev" + std::to_string(dev_agents[d]) + ":" + dfa.state_names[q];
        }
    }
    tw.accepting[tw.accept_sink] = true;
    tw.state_label[tw.accept_sink] = "qA";

    std::vector<int> dev_index(k, -1);
    for (std::size_t d = 0; d < dev_agents.size(); ++d) dev_index[dev_agents[d]] = static_cast<int>(d);
    const std::vector<PairClass> pairs = classify_pairs(game);

    tw.tau.assign(static_cast<std::size_t>(tw.num_states) * L * L, -1);
    auto slot = [&](int s, LetterId a, LetterId b) -> std::int32_t& {
        return tw.tau[(static_cast<std::size_t>(s) * L + a) * L + b];
    };

    for (int v = 0; v < nq; ++v) {
        const AwState& s = product_states[v];
        for (LetterId a = 0; a < L; ++a)
            for (LetterId b = 0; b < L; ++b) {
                const PairClass& pc = pairs[static_cast<std::size_t>(a) * L + b];
                if (pc.kind == PairClass::Same) {
                    slot(v, a, b) = product_succ[v][a];  // -1 when the product automaton is stuck
                } else if (pc.kind == PairClass::SingleDiff && dev_index[pc.diff_agent] >= 0) {
                    const int j = pc.diff_agent;
                    const GoalDfa& dfa = game.goal(j);
                    const StateId q = dfa.step(s.components[j], b);
                    slot(v, a, b) = dfa.is_accepting(q) ? -1 : tw.dev_state(dev_index[j], q);
                } else {
                    // Differs at an agent in W, or at two or more agents: the
                    // direction leaves every checked trace family.
                    slot(v, a, b) = tw.accept_sink;
                }
            }
    }
    for (std::size_t d = 0; d < dev_agents.size(); ++d) {
        const int j = dev_agents[d];
        const GoalDfa& dfa = game.goal(j);
        for (StateId q = 0; q < dfa.num_states(); ++q) {
            const int state = tw.dev_state(static_cast<int>(d), q);
            for (LetterId a = 0; a < L; ++a)
                for (LetterId b = 0; b < L; ++b) {
                    const PairClass& pc = pairs[static_cast<std::size_t>(a) * L + b];
                    const bool j_compatible =
                        pc.kind == PairClass::Same ||
                        (pc.kind == PairClass::SingleDiff && pc.diff_agent == j);
                    if (j_compatible) {
                        const StateId q2 = dfa.step(q, b);
                        slot(state, a, b) = dfa.is_accepting(q2) ? -1 : tw.dev_state(static_cast<int>(d), q2);
                    } else {
                        slot(state, a, b) = tw.accept_sink;
                    }
                }
        }
    }
    for (LetterId a = 0; a < L; ++a)
        for (LetterId b = 0; b < L; ++b) slot(tw.accept_sink, a, b) = tw.accept_sink;

    return tw;
}

BuchiGame build_buchi_game(const TwAutomaton& tw) {
    const int S = tw.num_states;
    const int L = tw.num_letters;
    const int p1_base = S;
    const int sink = S + S * L;

    BuchiGame game;
    game.owner.assign(sink + 1, 0);
    game.accepting.assign(sink + 1, false);
    game.succ.resize(sink + 1);

    for (int s = 0; s < S; ++s) {
        game.owner[s] = 0;
        game.accepting[s] = tw.accepting[s];
        game.succ[s].reserve(L);
        for (LetterId a = 0; a < L; ++a) game.succ[s].push_back(p1_base + s * L + a);
    }
    for (int s = 0; s < S; ++s)
        for (LetterId a = 0; a < L; ++a) {
            const int pos = p1_base + s * L + a;
            game.owner[pos] = 1;
            game.succ[pos].reserve(L);
            for (LetterId b = 0; b < L; ++b) {
                const std::int32_t target = tw.step(s, a, b);
                game.succ[pos].push_back(target < 0 ? sink : target);
            }
        }
    game.owner[sink] = 1;
    game.succ[sink].push_back(sink);
    return game;
}

namespace {

// Attractor of `target` for `player` within the positions flagged alive.
std::vector<char> attractor(const BuchiGame& game, const std::vector<std::vector<int>>& preds,
                            const std::vector<char>& alive, std::vector<char> target, int player) {
    const int n = game.num_positions();
    std::vector<int> remaining(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (int to : game.succ[v])
            if (alive[to]) ++remaining[v];
    }
    std::deque<int> queue;
    for (int v = 0; v < n; ++v)
        if (target[v] && alive[v]) queue.push_back(v);
    std::vector<char> in_set = std::move(target);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : preds[v]) {
            if (!alive[w] || in_set[w]) continue;
            if (game.owner[w] == player || --remaining[w] == 0) {
                in_set[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return in_set;
}

} // namespace

std::vector<bool> solve_buchi_game(const BuchiGame& game) {
    const int n = game.num_positions();
    std::vector<std::vector<int>> preds(n);
    for (int v = 0; v < n; ++v)
        for (int to : game.succ[v]) preds[to].push_back(v);

    std::vector<char> alive(n, 1);
    while (true) {
        std::vector<char> accepting_alive(n, 0);
        bool any_alive = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            any_alive = true;
            if (game.accepting[v]) accepting_alive[v] = 1;
        }
        if (!any_alive) break;

        const std::vector<char> can_reach = attractor(game, preds, alive, accepting_alive, 0);
        std::vector<char> hopeless(n, 0);
        bool found_hopeless = false;
        for (int v = 0; v < n; ++v)
            if (alive[v] && !can_reach[v]) {
                hopeless[v] = 1;
                found_hopeless = true;
            }
        if (!found_hopeless) break;  // Player 0 forces accepting visits forever

        const std::vector<char> lost = attractor(game, preds, alive, std::move(hopeless), 1);
        for (int v = 0; v < n; ++v)
            if (lost[v]) alive[v] = 0;
    }

    std::vector<bool> win0(n, false);
    for (int v = 0; v < n; ++v) win0[v] = alive[v];
    return win0;
}

std::vector<bool> tw_nonempty_all(const TwAutomaton& tw) {
    const std::vector<bool> win0 = solve_buchi_game(build_buchi_game(tw));
    return std::vector<bool>(win0.begin(), win0.begin() + tw.num_states);
}

bool tw_nonempty_from(const TwAutomaton& tw, int state) {
    if (state < 0 || state >= tw.num_states)
        throw std::invalid_argument("tw_nonempty_from: state out of range");
    return tw_nonempty_all(tw)[state];
}

bool oracle_decide_w_ne(const GameSpec& game, AgentSet w, std::size_t size_budget) {
    const TwAutomaton tw = build_tw(game, w, size_budget);
    return tw_nonempty_from(tw, tw.initial);
}

} // namespace wne
