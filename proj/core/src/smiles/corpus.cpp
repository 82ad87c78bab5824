//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/corpus.h"

#include <fstream>

#include "molfp/error.h"
#include "molfp/smiles/parser.h"

namespace molfp::smiles {

Corpus read_corpus(std::istream &in, const CorpusOptions &options) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
      continue;
    const auto end = line.find_first_of(" \t\r", begin);
    std::string smi = line.substr(begin, end == std::string::npos
                                             ? std::string::npos
                                             : end - begin);
    try {
      const auto tokens = tokenize(smi);
      if (options.max_tokens > 0 && tokens.size() > options.max_tokens) {
        ++corpus.skipped;
        continue;
      }
      parse_tokens(tokens);
    } catch (const Error &) {
      ++corpus.skipped;
      continue;
    }
    corpus.smiles.push_back(std::move(smi));
    if (options.limit > 0 && corpus.smiles.size() >= options.limit)
      break;
  }
  return corpus;
}

Corpus read_corpus(const std::filesystem::path &path,
                   const CorpusOptions &options) {
  std::ifstream in(path);
  if (!in)
    throw Error("io.open", "cannot open corpus file " + path.string());
  return read_corpus(in, options);
}

}  // namespace molfp::smiles
