#ifndef WNE_CLI_HPP
#define WNE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wne {

/// Command-line entry point. Exit codes: 0 success (for `check` and
/// `witness`: an equilibrium exists), 1 no equilibrium (`check`/`witness`
/// only), 2 input error, 3 state/size budget exceeded.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

} // namespace wne

#endif
