/* cli.hpp: command-line front end.
 *
 * Subcommands: idempotents, basis, dim, rewrite, mult, morita, quiver,
 * truncation, reptheory, verify, cache.  Global flags: --json for
 * machine-readable output, --seed for sampled checks.  Exit codes:
 * 0 success / all checks pass, 1 verification failure, 2 usage or parse
 * error.  Diagnostics go to the error stream. */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klr {

/* One CLI invocation; args excludes the program name. */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klr
