//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TOOLS_CLI_CONFIG_H_
#define MOLFP_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace molfp::cli {

enum class KeyType { kInt, kReal, kBool, kText, kList, kPath };

struct KeySpec {
  std::string name;
  KeyType type;
  std::string default_value;
  std::string help;
};

// Every recognised configuration key, in help order.
std::span<const KeySpec> config_keys();

// Flag spelling of a key: "--" plus the key with '_' replaced by '-'.
std::string flag_name(std::string_view key);

// Plain-text key=value settings. '#' starts a comment; blank lines are
// ignored; surrounding whitespace is trimmed. Unknown keys and values that do
// not parse as the key's type throw Error("cli.config").
class RunConfig {
public:
  RunConfig();

  void load(std::istream &in, const std::string &source);
  void load_file(const std::filesystem::path &path);
  void set(const std::string &key, const std::string &value);

  // Non-empty value.
  bool is_set(const std::string &key) const;
  const std::string &text(const std::string &key) const;
  std::int64_t integer(const std::string &key) const;
  // integer() that must be >= minimum.
  std::size_t count(const std::string &key, std::int64_t minimum = 1) const;
  double real(const std::string &key) const;
  bool boolean(const std::string &key) const;
  // Comma-separated, items trimmed, empty items dropped.
  std::vector<std::string> list(const std::string &key) const;
  std::vector<double> reals(const std::string &key) const;

  // Path value; throws Error("cli.config") naming the key when empty.
  std::filesystem::path required_path(const std::string &key) const;

  // key=value lines in help order.
  std::string dump() const;

private:
  const KeySpec &spec(const std::string &key) const;

  std::map<std::string, std::string> values_;
};

}  // namespace molfp::cli

#endif  // MOLFP_TOOLS_CLI_CONFIG_H_
