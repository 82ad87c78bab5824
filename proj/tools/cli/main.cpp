//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "cli/app.h"

int main(int argc, char **argv) {
  return molfp::cli::run_cli(argc, argv, std::cout, std::cerr);
}
