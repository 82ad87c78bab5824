//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TOOLS_CLI_APP_H_
#define MOLFP_TOOLS_CLI_APP_H_

#include <ostream>

namespace molfp::cli {

// Parses the command line and runs one subcommand. Settings are resolved as
// built-in defaults, then the --config file, then explicit flags. Returns 0 on
// success, 1 after "error: <kind>: <message>" on `err`, 2 for usage errors.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace molfp::cli

#endif  // MOLFP_TOOLS_CLI_APP_H_
