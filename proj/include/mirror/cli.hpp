#pragma once

/**
 * @file cli.hpp
 * @brief The `mirror` command line: one subcommand per module operation.
 *
 * Exit codes: 0 when every requested check passes, 1 when a check fails or
 * a computation cannot finish, 2 for usage errors (unknown flags, invalid
 * parameters). Structured output goes to `out`, diagnostics to `err`.
 * Defaults for --order and --seed can be overridden through MIRROR_ORDER
 * and MIRROR_SEED.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace mirror {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mirror
