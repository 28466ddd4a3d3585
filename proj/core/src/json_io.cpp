#include "wne/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace wne {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

const json& require(const json& node, const char* key, const std::string& ctx) {
    if (!node.is_object() || !node.contains(key))
        throw ParseError(ctx + ": missing key '" + key + "'");
    return node.at(key);
}

std::vector<std::string> string_list(const json& node, const std::string& ctx) {
    if (!node.is_array()) throw ParseError(ctx + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(node.size());
    for (const json& item : node) {
        if (!item.is_string()) throw ParseError(ctx + ": expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

RawGame game_from_json(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
    RawGame raw;

    const json& agents = require(doc, "agents", origin);
    if (!agents.is_array() || agents.empty())
        throw ParseError(origin + ": 'agents' must be a nonempty array");
    raw.actions.resize(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string ctx = origin + ": agents[" + std::to_string(i) + "]";
        const json& agent = agents.at(i);
        const json& id = require(agent, "id", ctx);
        if (!id.is_number_integer() || id.get<int>() != static_cast<int>(i))
            throw ParseError(ctx + ": agent ids must be 0..k-1 in order");
        raw.actions[i] = string_list(require(agent, "actions", ctx), ctx + ".actions");
    }
    const int k = static_cast<int>(raw.actions.size());

    const json& goals = require(doc, "goals", origin);
    if (!goals.is_array()) throw ParseError(origin + ": 'goals' must be an array");
    std::vector<ValidationIssue> conflicts;
    for (std::size_t gi = 0; gi < goals.size(); ++gi) {
        const std::string ctx = origin + ": goals[" + std::to_string(gi) + "]";
        const json& goal = goals.at(gi);
        RawGoal g;
        const json& agent = require(goal, "agent", ctx);
        if (!agent.is_number_integer()) throw ParseError(ctx + ": 'agent' must be an integer");
        g.agent = agent.get<int>();
        g.states = string_list(require(goal, "states", ctx), ctx + ".states");
        const json& initial = require(goal, "initial", ctx);
        if (!initial.is_string()) throw ParseError(ctx + ": 'initial' must be a string");
        g.initial = initial.get<std::string>();
        g.accepting = string_list(require(goal, "accepting", ctx), ctx + ".accepting");

        const json& transitions = require(goal, "transitions", ctx);
        if (!transitions.is_array()) throw ParseError(ctx + ": 'transitions' must be an array");

        // Expand wildcards; remember which source entry produced each
        // concrete transition so conflicts can name both.
        std::map<std::pair<std::string, std::vector<std::string>>, std::pair<std::string, int>> expanded;
        for (std::size_t ti = 0; ti < transitions.size(); ++ti) {
            const std::string tctx = ctx + ".transitions[" + std::to_string(ti) + "]";
            const json& tr = transitions.at(ti);
            const json& from = require(tr, "from", tctx);
            const json& to = require(tr, "to", tctx);
            if (!from.is_string() || !to.is_string())
                throw ParseError(tctx + ": 'from' and 'to' must be strings");
            std::vector<std::string> letter = string_list(require(tr, "letter", tctx), tctx + ".letter");
            if (static_cast<int>(letter.size()) != k)
                throw ParseError(tctx + ": letter has " + std::to_string(letter.size()) +
                                 " components, expected " + std::to_string(k));

            std::vector<std::vector<std::string>> choices(k);
            for (int j = 0; j < k; ++j) {
                if (letter[j] == "_")
                    choices[j] = raw.actions[j];
                else
                    choices[j] = {letter[j]};
            }
            std::vector<int> pick(k, 0);
            while (true) {
                std::vector<std::string> concrete(k);
                for (int j = 0; j < k; ++j) concrete[j] = choices[j][pick[j]];
                auto key = std::make_pair(from.get<std::string>(), concrete);
                auto [it, fresh] = expanded.try_emplace(key, std::make_pair(to.get<std::string>(),
                                                                            static_cast<int>(ti)));
                if (!fresh && it->second.first != to.get<std::string>()) {
                    std::string letter_str = "(";
                    for (int j = 0; j < k; ++j) letter_str += (j ? "," : "") + concrete[j];
                    letter_str += ")";
                    conflicts.push_back(ValidationIssue{
                        ValidationCode::ConflictingTransition,
                        ctx + ": transitions[" + std::to_string(it->second.second) + "] and transitions[" +
                            std::to_string(ti) + "] both cover ('" + key.first + "', " + letter_str +
                            ") with different targets"});
                }
                int j = k - 1;
                while (j >= 0 && ++pick[j] == static_cast<int>(choices[j].size())) pick[j--] = 0;
                if (j < 0) break;
            }
        }
        for (const auto& [key, value] : expanded)
            g.transitions.push_back(RawTransition{key.first, key.second, value.first, value.second});
        raw.goals.push_back(std::move(g));
    }
    if (!conflicts.empty()) throw ValidationError(std::move(conflicts));
    return raw;
}

json letter_names(const GameSpec& game, LetterId letter) {
    json out = json::array();
    for (int i = 0; i < game.num_agents(); ++i)
        out.push_back(game.action_name(i, game.letter_action(letter, i)));
    return out;
}

json lasso_to_json(const GameSpec& game, const Lasso& lasso) {
    json out;
    out["prefix"] = json::array();
    for (LetterId a : lasso.prefix) out["prefix"].push_back(letter_names(game, a));
    out["cycle"] = json::array();
    for (LetterId a : lasso.cycle) out["cycle"].push_back(letter_names(game, a));
    return out;
}

std::string emit(const json& doc, bool pretty) { return pretty ? doc.dump(2) : doc.dump(); }

} // namespace

RawGame read_game_file(const std::string& path) { return game_from_json(load_json(path), path); }

RawGame read_game_text(const std::string& text, const std::string& origin) {
    return game_from_json(parse_json_text(text, origin), origin);
}

GameSpec parse_game(const std::string& path) { return validate_game(read_game_file(path)); }

GameSpec parse_game_text(const std::string& text, const std::string& origin) {
    return validate_game(read_game_text(text, origin));
}

FlatDfa parse_flat_dfa(const std::string& path) {
    GameSpec game = parse_game(path);
    if (game.num_agents() != 1)
        throw ParseError(path + ": a flat DFA file must declare exactly one agent");
    const GoalDfa& goal = game.goal(0);
    FlatDfa dfa;
    dfa.alphabet = game.actions()[0];
    dfa.state_names = goal.state_names;
    dfa.initial = goal.initial;
    dfa.accepting = goal.accepting;
    dfa.delta = goal.delta;
    return dfa;
}

std::string serialize_game(const GameSpec& game, bool pretty) {
    json doc;
    doc["agents"] = json::array();
    for (int i = 0; i < game.num_agents(); ++i)
        doc["agents"].push_back({{"id", i}, {"actions", game.actions()[i]}});
    doc["goals"] = json::array();
    for (int i = 0; i < game.num_agents(); ++i) {
        const GoalDfa& goal = game.goal(i);
        json g;
        g["agent"] = i;
        g["states"] = goal.state_names;
        g["initial"] = goal.state_names[goal.initial];
        g["accepting"] = json::array();
        for (StateId q = 0; q < goal.num_states(); ++q)
            if (goal.is_accepting(q)) g["accepting"].push_back(goal.state_names[q]);
        g["transitions"] = json::array();
        for (StateId q = 0; q < goal.num_states(); ++q)
            for (LetterId a = 0; a < game.num_letters(); ++a)
                g["transitions"].push_back({{"from", goal.state_names[q]},
                                            {"letter", letter_names(game, a)},
                                            {"to", goal.state_names[goal.step(q, a)]}});
        doc["goals"].push_back(std::move(g));
    }
    return emit(doc, pretty);
}

std::string serialize_verdict(const GameSpec& game, const Verdict& verdict, bool pretty) {
    json doc;
    doc["winning_set"] = set_to_list(verdict.winning_set);
    doc["exists"] = verdict.exists;
    doc["witness"] = verdict.witness ? lasso_to_json(game, *verdict.witness) : json(nullptr);
    doc["stats"] = {{"explored_states", verdict.stats.explored_states},
                    {"elapsed_seconds", verdict.stats.elapsed_seconds}};
    return emit(doc, pretty);
}

std::string serialize_transducer(const GameSpec& game, AgentSet w, const ProfileTransducer& t,
                                 bool pretty) {
    json doc;
    doc["winning_set"] = set_to_list(w);
    doc["letters"] = json::array();
    for (LetterId a = 0; a < game.num_letters(); ++a) doc["letters"].push_back(letter_names(game, a));
    doc["initial"] = t.initial;
    doc["modes"] = json::array();
    for (int m = 0; m < t.mode_count(); ++m) {
        const ProfileTransducer::Mode& mode = t.modes[m];
        doc["modes"].push_back({{"id", m},
                                {"label", mode.label},
                                {"output", letter_names(game, mode.output)},
                                {"next", mode.next}});
    }
    return emit(doc, pretty);
}

ProfileTransducer parse_transducer(const GameSpec& game, const std::string& path) {
    const json doc = load_json(path);
    if (!doc.is_object()) throw ParseError(path + ": top level must be an object");

    const json& letters = require(doc, "letters", path);
    if (!letters.is_array() || static_cast<int>(letters.size()) != game.num_letters())
        throw ParseError(path + ": 'letters' must list all " + std::to_string(game.num_letters()) +
                         " joint letters in canonical order");
    auto letter_of = [&](const json& names, const std::string& ctx) -> LetterId {
        std::vector<std::string> tuple = string_list(names, ctx);
        if (static_cast<int>(tuple.size()) != game.num_agents())
            throw ParseError(ctx + ": wrong letter arity");
        Letter letter;
        letter.actions.resize(game.num_agents());
        for (int i = 0; i < game.num_agents(); ++i) {
            const auto& names_i = game.actions()[i];
            auto it = std::find(names_i.begin(), names_i.end(), tuple[i]);
            if (it == names_i.end())
                throw ParseError(ctx + ": '" + tuple[i] + "' is not an action of agent " + std::to_string(i));
            letter.actions[i] = static_cast<int>(it - names_i.begin());
        }
        return game.letter_id(letter);
    };
    for (int a = 0; a < game.num_letters(); ++a)
        if (letter_of(letters.at(a), path + ".letters") != a)
            throw ParseError(path + ": 'letters' is not in the game's canonical order");

    ProfileTransducer t;
    t.num_letters = game.num_letters();
    const json& modes = require(doc, "modes", path);
    if (!modes.is_array() || modes.empty()) throw ParseError(path + ": 'modes' must be a nonempty array");
    t.modes.resize(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const std::string ctx = path + ".modes[" + std::to_string(m) + "]";
        const json& mode = modes.at(m);
        const json& id = require(mode, "id", ctx);
        if (!id.is_number_integer() || id.get<int>() != static_cast<int>(m))
            throw ParseError(ctx + ": mode ids must be 0..n-1 in order");
        ProfileTransducer::Mode& out = t.modes[m];
        out.output = letter_of(require(mode, "output", ctx), ctx + ".output");
        out.label = mode.contains("label") ? mode.at("label").get<std::string>() : "";
        const json& next = require(mode, "next", ctx);
        if (!next.is_array() || static_cast<int>(next.size()) != game.num_letters())
            throw ParseError(ctx + ": 'next' must have one successor per joint letter");
        out.next.resize(next.size());
        for (std::size_t a = 0; a < next.size(); ++a) {
            if (!next.at(a).is_number_integer()) throw ParseError(ctx + ": successors must be mode ids");
            const int target = next.at(a).get<int>();
            if (target < 0 || target >= static_cast<int>(modes.size()))
                throw ParseError(ctx + ": successor " + std::to_string(target) + " out of range");
            out.next[a] = target;
        }
    }
    const json& initial = require(doc, "initial", path);
    if (!initial.is_number_integer() || initial.get<int>() < 0 ||
        initial.get<int>() >= static_cast<int>(modes.size()))
        throw ParseError(path + ": 'initial' out of range");
    t.initial = initial.get<int>();
    return t;
}

std::string serialize_verify_report(const GameSpec& game, AgentSet w, const VerifyReport& report,
                                    bool pretty) {
    json doc;
    doc["winning_set"] = set_to_list(w);
    doc["passed"] = report.passed();
    doc["primary_trace"] = {{"ok", report.primary_ok},
                            {"satisfied", set_to_list(report.primary_satisfied)},
                            {"lasso", lasso_to_json(game, report.primary)}};
    doc["deviations"] = json::array();
    for (const DeviationFailure& f : report.deviation_failures) {
        json word = json::array();
        for (LetterId a : f.word) word.push_back(letter_names(game, a));
        doc["deviations"].push_back({{"agent", f.agent}, {"goal_reached_via", word}});
    }
    return emit(doc, pretty);
}

std::string serialize_safety_solution(const GameSpec& game, const SafetySolution& solution, bool pretty) {
    const GoalDfa& goal = game.goal(solution.deviator);
    json doc;
    doc["agent"] = solution.deviator;
    doc["win0_states"] = json::array();
    for (StateId q = 0; q < solution.num_states; ++q)
        if (solution.winning_state(q)) doc["win0_states"].push_back(goal.state_names[q]);
    doc["strategy"] = json::array();
    for (StateId q = 0; q < solution.num_states; ++q) {
        if (solution.strategy[q] < 0) continue;
        ProjectedLetter move = game.projected_tuple(solution.strategy[q], solution.deviator);
        json actions = json::array();
        int slot = 0;
        for (int i = 0; i < game.num_agents(); ++i) {
            if (i == solution.deviator) continue;
            actions.push_back(game.action_name(i, move.actions[slot++]));
        }
        doc["strategy"].push_back({{"state", goal.state_names[q]}, {"move", actions}});
    }
    return emit(doc, pretty);
}

AgentSet parse_winning_set(const std::string& text, int num_agents) {
    if (text == "none") return 0;
    if (text.empty()) throw ParseError("empty --winning-set; use 'none' for the empty set");
    AgentSet w = 0;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t pos = 0;
        int agent = -1;
        try {
            agent = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw ParseError("invalid agent token '" + token + "'");
        }
        if (pos != token.size()) throw ParseError("invalid agent token '" + token + "'");
        if (agent < 0 || agent >= num_agents)
            throw ParseError("unknown agent " + std::to_string(agent));
        w = set_with(w, agent);
    }
    return w;
}

} // namespace wne
