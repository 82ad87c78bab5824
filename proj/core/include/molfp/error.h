//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_ERROR_H_
#define MOLFP_ERROR_H_

#include <stdexcept>
#include <string>

namespace molfp {

// Base class for every error thrown by the library. `kind()` is a short
// machine-readable tag (e.g. "smiles.unclosed_bracket") used by the CLI for
// its error line.
class Error: public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) { }

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

}  // namespace molfp

#endif  // MOLFP_ERROR_H_
