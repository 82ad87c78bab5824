//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance.h"
#include "molfp/error.h"
#include "molfp/fingerprints/ecfp.h"
#include "molfp/fingerprints/st.h"
#include "molfp/random.h"
#include "molfp/smiles/equivalence.h"
#include "molfp/smiles/parser.h"
#include "molfp/smiles/tokenizer.h"
#include "molfp/smiles/writer.h"
#include "molfp/transformer/train.h"

namespace molfp::acceptance {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("io.open", "cannot read " + path.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty())
      out.push_back(line);
  }
  return out;
}

}  // namespace

Outcome parser_suite(const Options &options) {
  const auto corpus = read_lines(options.data_dir / "parser_corpus.smi");
  std::size_t token_ok = 0, roundtrip_ok = 0, enum_ok = 0, enum_total = 0;
  std::string first_failure;
  auto note = [&](const std::string &what, const std::string &smiles) {
    if (first_failure.empty())
      first_failure = what + " " + smiles;
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto &s = corpus[i];
    try {
      if (smiles::detokenize(smiles::tokenize(s)) == s)
        ++token_ok;
      else
        note("detokenize", s);
      const auto graph = smiles::parse(s);
      if (smiles::graph_equal(graph, smiles::parse(smiles::serialize(graph))))
        ++roundtrip_ok;
      else
        note("serialize", s);
      Rng rng(i);
      for (int e = 0; e < 10; ++e) {
        ++enum_total;
        const auto text = smiles::enumerate_random(graph, rng);
        if (smiles::graph_equal(graph, smiles::parse(text)))
          ++enum_ok;
        else
          note("enumerate", s + " -> " + text);
      }
    } catch (const Error &e) {
      note(e.kind(), s);
    }
  }
  const std::size_t n = corpus.size();
  std::ostringstream d;
  d << n << " SMILES: tokenize identity " << token_ok << "/" << n << ", parse-serialize "
    << roundtrip_ok << "/" << n << ", enumerations " << enum_ok << "/" << 10 * n;
  if (!first_failure.empty())
    d << "; first failure: " << first_failure;
  return { n >= 1000 && token_ok == n && roundtrip_ok == n && enum_ok == 10 * n
               && enum_total == 10 * n,
           d.str() };
}

Outcome fingerprint_shape(const Options &options) {
  auto corpus = read_lines(options.data_dir / "parser_corpus.smi");
  corpus.resize(64);
  const auto vocab = transformer::pretrain_vocab(corpus);
  transformer::ModelConfig cfg;
  cfg.d_model = 256;
  cfg.vocab_size = vocab.size();
  const transformer::TransformerModel<float> model(cfg, 7);

  std::vector<std::vector<float>> single;
  bool lengths_ok = true;
  for (const auto &s: corpus) {
    single.push_back(fingerprints::st_fingerprint(model, vocab, s));
    lengths_ok = lengths_ok && single.back().size() == 1024;
  }
  std::size_t mismatched = 0;
  for (std::size_t batch: { 1, 5, 64 }) {
    const auto rows = fingerprints::st_fingerprints(model, vocab, corpus, batch);
    if (rows.rows() != corpus.size() || rows.cols() != 1024) {
      lengths_ok = false;
      continue;
    }
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (std::memcmp(rows.row(i).data(), single[i].data(), 1024 * sizeof(float)) != 0)
        ++mismatched;
  }
  std::ostringstream d;
  d << "d_model 256 gives " << single.front().size() << " entries; "
    << mismatched << " of " << 3 * corpus.size()
    << " batched rows (batch 1, 5, 64) differ from single-molecule extraction";
  return { lengths_ok && mismatched == 0, d.str() };
}

Outcome ecfp_invariance(const Options &options) {
  auto corpus = read_lines(options.data_dir / "parser_corpus.smi");
  corpus.resize(100);
  std::size_t identical = 0, distinct_strings = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto graph = smiles::parse(corpus[i]);
    const auto reference = fingerprints::ecfp(graph);
    Rng rng(1000 + i);
    for (int e = 0; e < 10; ++e) {
      const auto text = smiles::enumerate_random(graph, rng);
      distinct_strings += text != corpus[i];
      identical += fingerprints::ecfp(smiles::parse(text)) == reference;
    }
  }
  const auto benzene = fingerprints::ecfp(smiles::parse("c1ccccc1"));
  const auto benzene_bits = std::accumulate(benzene.begin(), benzene.end(), std::size_t { 0 });
  std::ostringstream d;
  d << identical << "/1000 enumerations identical (" << distinct_strings
    << " differ from the input string); benzene sets " << benzene_bits << " bits";
  return { identical == 1000 && benzene_bits <= 3, d.str() };
}

}  // namespace molfp::acceptance
