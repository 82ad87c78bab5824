//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TRANSFORMER_CHECKPOINT_H_
#define MOLFP_TRANSFORMER_CHECKPOINT_H_

#include <filesystem>

#include "molfp/smiles/vocab.h"
#include "molfp/transformer/config.h"
#include "molfp/transformer/model.h"

namespace molfp::transformer {

// A checkpoint is a manifest `<stem>.json` (format tag, version, model
// config, vocabulary, and {name, shape, offset, length} per tensor) next to
// a blob `<stem>.bin` of little-endian float32 values in manifest order.
inline constexpr const char *kCheckpointFormat = "molfp-checkpoint";
inline constexpr int kCheckpointVersion = 1;

struct CheckpointPaths {
  std::filesystem::path manifest;
  std::filesystem::path blob;
};

// Accepts the stem or the manifest path.
CheckpointPaths checkpoint_paths(const std::filesystem::path &path);

struct Checkpoint {
  smiles::Vocab vocab;
  TransformerModel<float> model;
};

// Throws Error("checkpoint.io") when a file cannot be written.
void save_checkpoint(const TransformerModel<float> &model,
                     const smiles::Vocab &vocab,
                     const std::filesystem::path &path);

// Error kinds: checkpoint.io (unreadable file), checkpoint.malformed
// (unparseable manifest or inconsistent offsets), checkpoint.version,
// checkpoint.shape (tensor list or vocabulary disagrees with the config),
// checkpoint.truncated (blob shorter than the manifest declares).
Checkpoint load_checkpoint(const std::filesystem::path &path);

}  // namespace molfp::transformer

#endif  // MOLFP_TRANSFORMER_CHECKPOINT_H_
