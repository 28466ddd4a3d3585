#include "wne/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "wne/equilibrium.hpp"
#include "wne/json_io.hpp"
#include "wne/oracle.hpp"
#include "wne/reduction.hpp"
#include "wne/synthesis.hpp"

namespace wne {

namespace {

constexpr int kExitExists = 0;
constexpr int kExitNotExists = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
    std::string game_path;
    std::string winning_set;
    std::size_t state_budget = kDefaultStateBudget;
    bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_winning_set) {
    cmd->add_option("--game", opts.game_path, "game file (JSON)")->required();
    if (with_winning_set)
        cmd->add_option("--winning-set", opts.winning_set,
                        "comma-separated agent ids, or 'none' for the empty set")
            ->required();
    cmd->add_option("--state-budget", opts.state_budget, "explored-state cap")
        ->capture_default_str();
    cmd->add_flag("--pretty", opts.pretty, "human-readable JSON");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nash equilibrium solver for iterated games with DFA goals", "wne"};
    app.require_subcommand(1);

    CommonOpts check_opts;
    CLI::App* check = app.add_subcommand("check", "decide one winning set");
    add_common(check, check_opts, true);

    CommonOpts enum_opts;
    int parallel = 1;
    CLI::App* enumerate = app.add_subcommand("enumerate", "decide every subset of agents");
    add_common(enumerate, enum_opts, false);
    enumerate->add_option("--parallel", parallel, "worker threads")->capture_default_str();

    CommonOpts witness_opts;
    std::string profile_out;
    CLI::App* witness = app.add_subcommand("witness", "decide and emit a strategy profile");
    add_common(witness, witness_opts, true);
    witness->add_option("--profile-out", profile_out, "write the profile to this file");

    CommonOpts verify_opts;
    std::string profile_path;
    CLI::App* verify = app.add_subcommand("verify", "check a strategy profile");
    add_common(verify, verify_opts, true);
    verify->add_option("--profile", profile_path, "profile file (JSON)")->required();

    CommonOpts safety_opts;
    int safety_agent = -1;
    bool dump_arena_flag = false;
    CLI::App* safety = app.add_subcommand("solve-safety", "solve one deviator's safety game");
    add_common(safety, safety_opts, false);
    safety->add_option("--agent", safety_agent, "deviating agent id")->required();
    safety->add_flag("--dump-arena", dump_arena_flag, "dump the arena to stderr");

    std::vector<std::string> dfa_paths;
    bool reduce_pretty = false;
    CLI::App* reduce = app.add_subcommand("reduce", "build a game from a DFA-intersection instance");
    reduce->add_option("--dfas", dfa_paths, "flat DFA files (JSON, single-agent schema)")
        ->required()
        ->expected(-1);
    reduce->add_flag("--pretty", reduce_pretty, "human-readable JSON");

    CommonOpts oracle_opts;
    CLI::App* oracle = app.add_subcommand("oracle-check", "decide via the tree-automaton route (debug)");
    add_common(oracle, oracle_opts, true);
    oracle->group("");  // debug aid, hidden from help

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 pops from the back
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    auto summarize = [&err](const GameSpec& game, const Verdict& verdict) {
        err << "W=" << format_agent_set(verdict.winning_set)
            << (verdict.exists ? ": equilibrium exists; primary trace " : ": no equilibrium");
        if (verdict.witness) {
            for (LetterId a : verdict.witness->prefix) err << game.format_letter(a);
            err << '(';
            for (LetterId a : verdict.witness->cycle) err << game.format_letter(a);
            err << ")^w";
        }
        err << '\n';
    };

    if (check->parsed()) {
        GameSpec game = parse_game(check_opts.game_path);
        AgentSet w = parse_winning_set(check_opts.winning_set, game.num_agents());
        Verdict verdict = decide_w_ne(game, w, check_opts.state_budget);
        out << serialize_verdict(game, verdict, check_opts.pretty) << '\n';
        if (check_opts.pretty) summarize(game, verdict);
        return verdict.exists ? kExitExists : kExitNotExists;
    }

    if (enumerate->parsed()) {
        GameSpec game = parse_game(enum_opts.game_path);
        for (const Verdict& verdict : enumerate_ne_sets(game, enum_opts.state_budget, parallel))
            out << serialize_verdict(game, verdict, enum_opts.pretty) << '\n';
        return 0;
    }

    if (witness->parsed()) {
        GameSpec game = parse_game(witness_opts.game_path);
        AgentSet w = parse_winning_set(witness_opts.winning_set, game.num_agents());
        std::vector<std::optional<SafetySolution>> solutions(game.num_agents());
        for (int j = 0; j < game.num_agents(); ++j)
            if (!set_contains(w, j) && game.action_count(j) >= 2)
                solutions[j] = solve_safety(build_safety_arena(game, j));
        Verdict verdict = decide_w_ne(game, w, solutions, witness_opts.state_budget);
        out << serialize_verdict(game, verdict, witness_opts.pretty) << '\n';
        if (witness_opts.pretty) summarize(game, verdict);
        if (!verdict.exists) return kExitNotExists;
        ProfileTransducer profile = synthesize_profile(game, w, *verdict.witness, solutions);
        const std::string text = serialize_transducer(game, w, profile, witness_opts.pretty);
        if (profile_out.empty()) {
            out << text << '\n';
        } else {
            std::ofstream file(profile_out);
            if (!file) throw ParseError(profile_out + ": cannot write file");
            file << text << '\n';
        }
        return kExitExists;
    }

    if (verify->parsed()) {
        GameSpec game = parse_game(verify_opts.game_path);
        AgentSet w = parse_winning_set(verify_opts.winning_set, game.num_agents());
        ProfileTransducer profile = parse_transducer(game, profile_path);
        VerifyReport report = verify_profile(game, w, profile);
        out << serialize_verify_report(game, w, report, verify_opts.pretty) << '\n';
        return 0;
    }

    if (safety->parsed()) {
        GameSpec game = parse_game(safety_opts.game_path);
        SafetyArena arena = build_safety_arena(game, safety_agent);
        if (dump_arena_flag) dump_arena(game, arena, err);
        out << serialize_safety_solution(game, solve_safety(arena), safety_opts.pretty) << '\n';
        return 0;
    }

    if (reduce->parsed()) {
        std::vector<FlatDfa> dfas;
        dfas.reserve(dfa_paths.size());
        for (const std::string& path : dfa_paths) dfas.push_back(parse_flat_dfa(path));
        out << serialize_game(build_dfaie_game(dfas), reduce_pretty) << '\n';
        return 0;
    }

    if (oracle->parsed()) {
        GameSpec game = parse_game(oracle_opts.game_path);
        AgentSet w = parse_winning_set(oracle_opts.winning_set, game.num_agents());
        const bool exists = oracle_decide_w_ne(game, w, oracle_opts.state_budget);
        out << "{\"winning_set\":" << "[";
        const std::vector<int> agents = set_to_list(w);
        for (std::size_t i = 0; i < agents.size(); ++i) out << (i ? "," : "") << agents[i];
        out << "],\"exists\":" << (exists ? "true" : "false") << ",\"oracle\":true}" << '\n';
        return 0;
    }

    return kExitInputError;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const StateBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const SizeBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace wne
