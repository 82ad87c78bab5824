//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/transformer/checkpoint.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

#include "molfp/error.h"

namespace molfp::transformer {
namespace {
using nlohmann::json;

[[noreturn]] void fail(const char *kind, const std::string &message) {
  throw Error(kind, message);
}

json config_to_json(const ModelConfig &c) {
  return json { { "n_layers", c.n_layers },     { "n_heads", c.n_heads },
                { "d_model", c.d_model },       { "d_ff", c.ff_dim() },
                { "max_seq_len", c.max_seq_len },
                { "vocab_size", c.vocab_size }, { "dropout", c.dropout } };
}

ModelConfig config_from_json(const json &j) {
  ModelConfig c;
  c.n_layers = j.at("n_layers").get<std::size_t>();
  c.n_heads = j.at("n_heads").get<std::size_t>();
  c.d_model = j.at("d_model").get<std::size_t>();
  c.d_ff = j.at("d_ff").get<std::size_t>();
  c.max_seq_len = j.at("max_seq_len").get<std::size_t>();
  c.vocab_size = j.at("vocab_size").get<std::size_t>();
  c.dropout = j.at("dropout").get<double>();
  return c;
}

void put_le32(std::vector<char> &out, float value) {
  std::uint32_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  for (int shift = 0; shift < 32; shift += 8)
    out.push_back(static_cast<char>((bits >> shift) & 0xffu));
}

float get_le32(const unsigned char *p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0])
                             | static_cast<std::uint32_t>(p[1]) << 8
                             | static_cast<std::uint32_t>(p[2]) << 16
                             | static_cast<std::uint32_t>(p[3]) << 24;
  float value;
  std::memcpy(&value, &bits, sizeof value);
  return value;
}
}  // namespace

CheckpointPaths checkpoint_paths(const std::filesystem::path &path) {
  std::filesystem::path stem = path;
  if (stem.extension() == ".json" || stem.extension() == ".bin")
    stem.replace_extension();
  CheckpointPaths out;
  out.manifest = stem;
  out.manifest += ".json";
  out.blob = stem;
  out.blob += ".bin";
  return out;
}

void save_checkpoint(const TransformerModel<float> &model,
                     const smiles::Vocab &vocab,
                     const std::filesystem::path &path) {
  const CheckpointPaths paths = checkpoint_paths(path);
  json tensors = json::array();
  std::vector<char> blob;
  for (const auto &p: model.parameters()) {
    const std::size_t offset = blob.size();
    for (float v: p.value.values())
      put_le32(blob, v);
    tensors.push_back({ { "name", p.name },
                        { "shape", p.value.shape() },
                        { "offset", offset },
                        { "length", blob.size() - offset } });
  }
  json manifest { { "format", kCheckpointFormat },
                  { "version", kCheckpointVersion },
                  { "config", config_to_json(model.config()) },
                  { "vocab", vocab.tokens() },
                  { "blob", paths.blob.filename().string() },
                  { "blob_bytes", blob.size() },
                  { "tensors", std::move(tensors) } };

  std::ofstream blob_out(paths.blob, std::ios::binary | std::ios::trunc);
  if (!blob_out)
    fail("checkpoint.io", "cannot write " + paths.blob.string());
  blob_out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  std::ofstream manifest_out(paths.manifest, std::ios::trunc);
  if (!manifest_out)
    fail("checkpoint.io", "cannot write " + paths.manifest.string());
  manifest_out << manifest.dump(2) << '\n';
  if (!blob_out.good() || !manifest_out.good())
    fail("checkpoint.io", "write failed for " + paths.manifest.string());
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
  const CheckpointPaths paths = checkpoint_paths(path);
  std::ifstream manifest_in(paths.manifest);
  if (!manifest_in)
    fail("checkpoint.io", "cannot open " + paths.manifest.string());
  json manifest;
  try {
    manifest = json::parse(manifest_in);
  } catch (const json::exception &e) {
    fail("checkpoint.malformed", paths.manifest.string() + ": " + e.what());
  }

  ModelConfig config;
  std::vector<std::string> tokens;
  try {
    if (manifest.at("format").get<std::string>() != kCheckpointFormat)
      fail("checkpoint.version", "not a molfp checkpoint: format '"
                                     + manifest.at("format").get<std::string>()
                                     + "'");
    const int version = manifest.at("version").get<int>();
    if (version != kCheckpointVersion)
      fail("checkpoint.version", "checkpoint version "
                                     + std::to_string(version)
                                     + ", this build reads "
                                     + std::to_string(kCheckpointVersion));
    config = config_from_json(manifest.at("config"));
    tokens = manifest.at("vocab").get<std::vector<std::string>>();
  } catch (const json::exception &e) {
    fail("checkpoint.malformed", paths.manifest.string() + ": " + e.what());
  }

  try {
    config.validate();
  } catch (const Error &e) {
    fail("checkpoint.shape", std::string("invalid config: ") + e.what());
  }
  if (tokens.size() != config.vocab_size)
    fail("checkpoint.shape", "vocabulary has " + std::to_string(tokens.size())
                                 + " tokens, config says "
                                 + std::to_string(config.vocab_size));
  smiles::Vocab vocab;
  try {
    vocab = smiles::Vocab::from_tokens(tokens);
  } catch (const Error &e) {
    fail("checkpoint.malformed", std::string("vocabulary: ") + e.what());
  }

  TransformerModel<float> model(config, 0);
  auto &params = model.parameters();
  const json &entries = manifest.contains("tensors") ? manifest["tensors"]
                                                     : json();
  if (!entries.is_array())
    fail("checkpoint.malformed", "manifest has no tensor list");
  if (entries.size() != params.size())
    fail("checkpoint.shape", "manifest lists " + std::to_string(entries.size())
                                 + " tensors, the model has "
                                 + std::to_string(params.size()));

  struct Slot {
    std::size_t offset, length;
  };
  std::vector<Slot> slots;
  std::size_t expected_offset = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto &param = params[i];
    std::string name;
    numerics::Shape shape;
    Slot slot {};
    try {
      name = entries[i].at("name").get<std::string>();
      shape = entries[i].at("shape").get<numerics::Shape>();
      slot.offset = entries[i].at("offset").get<std::size_t>();
      slot.length = entries[i].at("length").get<std::size_t>();
    } catch (const json::exception &e) {
      fail("checkpoint.malformed", "tensor " + std::to_string(i) + ": "
                                       + e.what());
    }
    if (name != param.name)
      fail("checkpoint.shape", "tensor " + std::to_string(i) + " is '" + name
                                   + "', expected '" + param.name + "'");
    if (shape != param.value.shape())
      fail("checkpoint.shape", "tensor '" + name + "' has shape "
                                   + numerics::shape_string(shape)
                                   + ", config implies "
                                   + numerics::shape_string(
                                       param.value.shape()));
    if (slot.length != param.value.numel() * 4)
      fail("checkpoint.shape", "tensor '" + name + "' declares "
                                   + std::to_string(slot.length)
                                   + " bytes for shape "
                                   + numerics::shape_string(shape));
    if (slot.offset != expected_offset)
      fail("checkpoint.malformed", "tensor '" + name + "' starts at byte "
                                       + std::to_string(slot.offset)
                                       + ", expected "
                                       + std::to_string(expected_offset));
    expected_offset += slot.length;
    slots.push_back(slot);
  }

  std::ifstream blob_in(paths.blob, std::ios::binary);
  if (!blob_in)
    fail("checkpoint.io", "cannot open " + paths.blob.string());
  const std::vector<unsigned char> blob(
      (std::istreambuf_iterator<char>(blob_in)),
      std::istreambuf_iterator<char>());
  if (blob.size() < expected_offset)
    fail("checkpoint.truncated", paths.blob.string() + " has "
                                     + std::to_string(blob.size())
                                     + " bytes, manifest needs "
                                     + std::to_string(expected_offset));
  if (blob.size() > expected_offset)
    fail("checkpoint.malformed", paths.blob.string() + " has "
                                     + std::to_string(blob.size())
                                     + " bytes, manifest covers "
                                     + std::to_string(expected_offset));

  for (std::size_t i = 0; i < params.size(); ++i) {
    float *dst = params[i].value.data();
    const unsigned char *src = blob.data() + slots[i].offset;
    for (std::size_t j = 0; j < params[i].value.numel(); ++j)
      dst[j] = get_le32(src + 4 * j);
  }
  return Checkpoint { std::move(vocab), std::move(model) };
}

}  // namespace molfp::transformer
