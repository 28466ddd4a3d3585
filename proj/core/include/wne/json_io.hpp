#ifndef WNE_JSON_IO_HPP
#define WNE_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include "wne/equilibrium.hpp"
#include "wne/game.hpp"
#include "wne/reduction.hpp"
#include "wne/safety.hpp"
#include "wne/synthesis.hpp"

namespace wne {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a game file and expands `_` wildcards in transition letters to all
/// actions of the corresponding agent. Duplicate expansions agreeing on the
/// target are merged; disagreeing ones raise a ValidationError naming both
/// transition entries.
RawGame read_game_file(const std::string& path);
RawGame read_game_text(const std::string& text, const std::string& origin = "<input>");

/// read + validate.
GameSpec parse_game(const std::string& path);
GameSpec parse_game_text(const std::string& text, const std::string& origin = "<input>");

/// A flat DFA uses the same file schema with exactly one agent.
FlatDfa parse_flat_dfa(const std::string& path);

/// Canonical game file: explicit transitions in (state, letter) order.
std::string serialize_game(const GameSpec& game, bool pretty = true);

std::string serialize_verdict(const GameSpec& game, const Verdict& verdict, bool pretty = false);
std::string serialize_transducer(const GameSpec& game, AgentSet w, const ProfileTransducer& t,
                                 bool pretty = false);
ProfileTransducer parse_transducer(const GameSpec& game, const std::string& path);
std::string serialize_verify_report(const GameSpec& game, AgentSet w, const VerifyReport& report,
                                    bool pretty = false);
std::string serialize_safety_solution(const GameSpec& game, const SafetySolution& solution,
                                      bool pretty = false);

/// Comma-separated agent ids, or the token `none` for the empty set.
AgentSet parse_winning_set(const std::string& text, int num_agents);

} // namespace wne

#endif
