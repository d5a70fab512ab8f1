// Copyright 2026 The rupkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Corpus descriptive statistics and the stratified train/dev/test split.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rupkit/align.hpp"
#include "rupkit/corpus.hpp"
#include "rupkit/detail/rng.hpp"
#include "rupkit/detail/utf8.hpp"
#include "rupkit/orthography.hpp"
#include "rupkit/errors.hpp"

namespace rupkit {

struct CorpusStats {
  std::uint64_t words = 0;
  std::uint64_t unique_words = 0;
  double ttr = 0.0;  // type-token ratio, unique/total
  double words_per_sentence = 0.0;
};

// Words are maximal runs of Unicode letters, so hyphenated compounds and
// apostrophe clitics count as separate words; uniqueness is
// case-insensitive.  With per_sentence unset each input string counts as
// one sentence; with it set, strings are segmented first.
inline CorpusStats corpus_stats(const std::vector<std::string>& texts,
                                bool per_sentence = false,
                                const SplitterRules& rules = {}) {
  CorpusStats stats;
  std::unordered_set<std::string> vocab;
  std::uint64_t sentences = 0;
  for (const auto& text : texts) {
    const std::u32string u = detail::decode_utf8(text);
    detail::for_each_word(
        u,
        [&](std::size_t a, std::size_t b) {
          ++stats.words;
          std::u32string w;
          w.reserve(b - a);
          for (std::size_t i = a; i < b; ++i)
            w.push_back(detail::to_lower(u[i]));
          vocab.insert(detail::encode_utf8(w));
        },
        [](std::size_t, std::size_t) {});
    sentences += per_sentence ? split_sentences(text, rules).size() : 1;
  }
  if (stats.words == 0) throw DataError("no words in corpus");
  stats.unique_words = vocab.size();
  stats.ttr = static_cast<double>(stats.unique_words) /
              static_cast<double>(stats.words);
  stats.words_per_sentence =
      sentences ? static_cast<double>(stats.words) /
                      static_cast<double>(sentences)
                : 0.0;
  return stats;
}

struct SplitPlan {
  double ratio = 0.95;  // train share of each trainable source
  std::uint64_t seed = 0;
  SourceManifest manifest;
};

// Assigns a split to every pair, stratified by source.  Trainable sources
// get floor(ratio*n) pairs into train (chosen by a per-source seeded
// shuffle) and the rest into dev; dev_only and test_only sources go
// entirely to their fixed split.  Pair order is preserved; the same corpus
// and plan always produce the same assignment.
inline std::vector<SentencePair> stratified_split(std::vector<SentencePair> corpus,
                                                  const SplitPlan& plan) {
  if (!(plan.ratio >= 0.0 && plan.ratio <= 1.0))
    throw DataError("split ratio must be within [0, 1]");

  std::map<std::string, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& source = corpus[i].source;
    const auto* entry = plan.manifest.find(source);
    if (!entry) throw DataError("unknown source '" + source + "'");
    by_source[source].push_back(i);
  }

  for (auto& [source, indices] : by_source) {
    const auto* entry = plan.manifest.find(source);
    switch (entry->role) {
      case SourceRole::dev_only:
        for (const auto i : indices) corpus[i].split = Split::dev;
        break;
      case SourceRole::test_only:
        for (const auto i : indices) corpus[i].split = Split::test;
        break;
      case SourceRole::trainable: {
        // The epsilon keeps floor() faithful to the decimal ratio: with
        // ratio 0.95 and n 100 the product in binary is a hair under 95.
        const auto train_count = static_cast<std::size_t>(std::floor(
            plan.ratio * static_cast<double>(indices.size()) + 1e-9));
        std::vector<std::size_t> order = indices;
        std::mt19937_64 rng(
            detail::mix64(plan.seed ^ detail::fnv1a64(source)));
        detail::shuffle(order, rng);
        for (std::size_t k = 0; k < order.size(); ++k)
          corpus[order[k]].split =
              k < train_count ? Split::train : Split::dev;
        break;
      }
    }
  }
  return corpus;
}

}  // namespace rupkit
