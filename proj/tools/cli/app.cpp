//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/app.h"

#include <CLI11.hpp>

#include <map>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "cli/config.h"
#include "molfp/error.h"

namespace molfp::cli {

namespace {

struct Subcommand {
  const char *name;
  const char *help;
  void (*run)(const RunConfig &, std::ostream &);
};

const Subcommand kSubcommands[] {
  { "pretrain", "Train the SMILES autoencoder on a corpus and write a checkpoint",
    &cmd_pretrain },
  { "embed", "Write fingerprints for every SMILES in --input", &cmd_embed },
  { "bench", "Data-efficiency benchmark over a training-fraction ladder", &cmd_bench },
  { "strata", "Per-length-group evaluation", &cmd_strata },
  { "project", "Principal-component projection of fingerprints", &cmd_project },
};

const char *type_label(KeyType type) {
  switch (type) {
  case KeyType::kInt: return "INT";
  case KeyType::kReal: return "REAL";
  case KeyType::kList: return "LIST";
  case KeyType::kPath: return "PATH";
  default: return "TEXT";
  }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app("molfp: SMILES transformer fingerprints and data-efficiency benchmarks",
               "molfp");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file (flags override it)")
      ->check(CLI::ExistingFile);

  // Option storage; std::map keeps references stable.
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option *> options;
  for (const auto &spec: config_keys()) {
    const std::string key(spec.name);
    const std::string help = spec.help + std::string(" [") + spec.default_value + "]";
    if (spec.type == KeyType::kBool)
      options[key] = app.add_flag(flag_name(key) + ",!--no-" + flag_name(key).substr(2),
                                  flags[key], help);
    else
      options[key] = app.add_option(flag_name(key), values[key], help)
                         ->type_name(type_label(spec.type));
  }

  const Subcommand *chosen = nullptr;
  for (const auto &sub: kSubcommands) {
    auto *cmd = app.add_subcommand(sub.name, sub.help);
    cmd->fallthrough();
    cmd->callback([&chosen, &sub] { chosen = &sub; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: cli.usage: " << e.what() << '\n';
    return 2;
  }

  try {
    RunConfig config;
    if (!config_path.empty())
      config.load_file(config_path);
    for (const auto &[key, option]: options) {
      if (option->count() == 0)
        continue;
      config.set(key, flags.count(key) ? (flags[key] ? "true" : "false") : values[key]);
    }
    chosen->run(config, out);
  } catch (const Error &e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace molfp::cli
