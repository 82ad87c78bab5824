//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_CORPUS_H_
#define MOLFP_SMILES_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace molfp::smiles {

struct Corpus {
  std::vector<std::string> smiles;
  // Lines that failed to parse, or exceeded the token limit.
  std::size_t skipped = 0;
};

struct CorpusOptions {
  // Lines with more tokens than this are skipped; 0 disables the check.
  std::size_t max_tokens = 0;
  // Stop after this many accepted lines; 0 reads everything.
  std::size_t limit = 0;
};

// One SMILES per line, optionally followed by whitespace and a title which is
// ignored. Blank lines are ignored; lines that fail to parse are skipped and
// counted.
Corpus read_corpus(std::istream &in, const CorpusOptions &options = {});

// Throws Error("io.open") if the file cannot be opened.
Corpus read_corpus(const std::filesystem::path &path,
                   const CorpusOptions &options = {});

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_CORPUS_H_
