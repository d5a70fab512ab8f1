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
// Sentence segmentation and embedding-based document alignment.
//
// Alignment is a monotone 1:1 assignment: a dynamic program selects the
// sequence of sentence pairs with the highest total similarity, where each
// match pays a fixed margin so that weak pairs are skipped rather than
// forced.  Titles are matched greedily by similarity; verse material skips
// the DP and is paired positionally when both sides agree on the count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rupkit/corpus.hpp"
#include "rupkit/detail/utf8.hpp"
#include "rupkit/embeddings.hpp"
#include "rupkit/errors.hpp"

namespace rupkit {

// ---------------------------------------------------------------------------
// Sentence splitting
// ---------------------------------------------------------------------------

struct SplitterRules {
  // Each entry is a single codepoint that can end a sentence.
  std::vector<std::string> terminators = {".", "!", "?", "…"};
  // Lowercased tokens whose trailing period never ends a sentence.
  std::vector<std::string> abbreviations = {};
  // When set (the default), a sentence boundary requires whitespace after
  // the terminator; "3.14" and "a.m" never split.
  bool require_following_space = true;
};

namespace detail {

inline bool is_closing_quote(char32_t c) {
  switch (c) {
    case U')': case U']': case U'}':
    case 0xBB:      // »
    case 0x201D:    // ”
    case 0x2019:    // ’
    case U'"': case U'\'':
      return true;
    default:
      return false;
  }
}

inline bool is_opening_quote(char32_t c) {
  switch (c) {
    case U'(': case U'[': case U'{':
    case 0xAB:      // «
    case 0x201C:    // “
    case 0x2018:    // ‘
    case 0x201E:    // „
    case U'"': case U'\'':
      return true;
    default:
      return false;
  }
}

}  // namespace detail

// Splits running text into sentences.  A boundary is a terminator run, plus
// any closing quotes or brackets, followed by whitespace and then an
// uppercase letter or opening quote.  Inner content is preserved verbatim;
// only inter-sentence whitespace is consumed.
inline std::vector<std::string> split_sentences(
    std::string_view text, const SplitterRules& rules = {}) {
  std::set<char32_t> terms;
  for (const auto& t : rules.terminators) {
    const auto u = detail::decode_utf8(t);
    if (u.size() != 1)
      throw DataError("terminator must be a single character: " + t);
    terms.insert(u[0]);
  }
  std::set<std::string> abbrevs;
  for (const auto& a : rules.abbreviations)
    abbrevs.insert(detail::to_lower_utf8(a));

  const std::u32string u = detail::decode_utf8(text);
  std::vector<std::string> out;
  auto emit = [&](std::size_t a, std::size_t b) {
    while (a < b && detail::is_space(u[a])) ++a;
    while (b > a && detail::is_space(u[b - 1])) --b;
    if (a < b)
      out.push_back(detail::encode_utf8(
          std::u32string_view(u.data() + a, b - a)));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < u.size()) {
    if (!terms.count(u[i])) {
      ++i;
      continue;
    }
    const std::size_t term_start = i;
    std::size_t j = i;
    while (j < u.size() && terms.count(u[j])) ++j;
    std::size_t k = j;
    while (k < u.size() && detail::is_closing_quote(u[k])) ++k;
    std::size_t s = k;
    while (s < u.size() && detail::is_space(u[s])) ++s;

    bool ok = s < u.size();
    if (ok && rules.require_following_space && s == k) ok = false;
    if (ok) {
      const char32_t c = u[s];
      if (!detail::is_upper_letter(c) && !detail::is_opening_quote(c))
        ok = false;
    }
    if (ok && j - term_start == 1 && u[term_start] == U'.' &&
        !abbrevs.empty()) {
      std::size_t b = term_start;
      while (b > 0 && detail::is_letter(u[b - 1])) --b;
      if (b < term_start) {
        std::u32string w;
        for (std::size_t p = b; p < term_start; ++p)
          w.push_back(detail::to_lower(u[p]));
        if (abbrevs.count(detail::encode_utf8(w))) ok = false;
      }
    }
    if (ok) {
      emit(start, k);
      start = s;
      i = s;
    } else {
      i = j;
    }
  }
  emit(start, u.size());
  return out;
}

// ---------------------------------------------------------------------------
// Monotone DP alignment
// ---------------------------------------------------------------------------

struct AlignConfig {
  // Similarity floor below which a pair can never match.
  double min_sim = 0.5;
  // Margin subtracted from every matched pair's similarity; keeps the DP
  // from matching weakly similar sentences just because skipping is free.
  double match_penalty = 0.3;
};

struct AlignmentPath {
  std::vector<std::pair<int, int>> matches;  // strictly increasing in both
  std::vector<int> skipped_src;
  std::vector<int> skipped_tgt;
  double score = 0.0;
};

// Best monotone 1:1 alignment under the recurrence
//   S[i][j] = max(S[i-1][j], S[i][j-1],
//                 S[i-1][j-1] + sim(i,j) - penalty   if sim(i,j) >= min_sim)
// Skips cost nothing.  Ties during backtrace prefer match over skip-src
// over skip-tgt.  Runs in O(n*m) time, with O(m) live score cells plus the
// n*m one-byte move table for backtracing.
inline AlignmentPath align_dp(const SimMatrix& sim,
                              const AlignConfig& cfg = {}) {
  const int n = sim.rows;
  const int m = sim.cols;
  AlignmentPath path;
  if (n == 0 || m == 0) {
    for (int i = 0; i < n; ++i) path.skipped_src.push_back(i);
    for (int j = 0; j < m; ++j) path.skipped_tgt.push_back(j);
    return path;
  }

  std::vector<double> prev(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> cur(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<std::uint8_t> move(static_cast<std::size_t>(n) * m);
  constexpr std::uint8_t kMatch = 0, kSkipSrc = 1, kSkipTgt = 2;

  for (int i = 1; i <= n; ++i) {
    cur[0] = 0.0;
    const float* sim_row = &sim.data[static_cast<std::size_t>(i - 1) * m];
    std::uint8_t* move_row = &move[static_cast<std::size_t>(i - 1) * m];
    for (int j = 1; j <= m; ++j) {
      double best = prev[j];
      std::uint8_t mv = kSkipSrc;
      if (cur[j - 1] > best) {
        best = cur[j - 1];
        mv = kSkipTgt;
      }
      const float w = sim_row[j - 1];
      if (w >= cfg.min_sim) {
        const double cand =
            prev[j - 1] + (static_cast<double>(w) - cfg.match_penalty);
        if (cand >= best) {
          best = cand;
          mv = kMatch;
        }
      }
      cur[j] = best;
      move_row[j - 1] = mv;
    }
    std::swap(prev, cur);
  }
  path.score = prev[static_cast<std::size_t>(m)];

  int i = n;
  int j = m;
  while (i > 0 && j > 0) {
    switch (move[static_cast<std::size_t>(i - 1) * m + (j - 1)]) {
      case kMatch:
        path.matches.emplace_back(i - 1, j - 1);
        --i;
        --j;
        break;
      case kSkipSrc:
        path.skipped_src.push_back(--i);
        break;
      default:
        path.skipped_tgt.push_back(--j);
        break;
    }
  }
  while (i > 0) path.skipped_src.push_back(--i);
  while (j > 0) path.skipped_tgt.push_back(--j);
  std::reverse(path.matches.begin(), path.matches.end());
  std::reverse(path.skipped_src.begin(), path.skipped_src.end());
  std::reverse(path.skipped_tgt.begin(), path.skipped_tgt.end());
  return path;
}

// ---------------------------------------------------------------------------
// Document alignment
// ---------------------------------------------------------------------------

struct AlignMeta {
  std::string source;
  std::string genre;
  Orthography orthography = Orthography::cunia;
};

struct AlignReport {
  int src_total = 0;
  int tgt_total = 0;
  int matched = 0;
  int skipped_src = 0;
  int skipped_tgt = 0;
  double score = 0.0;
};

// Embeds both sides, aligns, and emits one SentencePair per matched pair.
// src sentences land in `rup`, tgt sentences in `ron`; pair ids encode the
// document ids and sentence indexes.
inline std::vector<SentencePair> align_documents(
    const DocumentPair& doc, const AlignConfig& cfg,
    const ProviderConfig& provider, AlignReport* report = nullptr,
    const AlignMeta& meta = {}) {
  const auto src_vecs = embed_batch(provider, doc.src_sentences);
  const auto tgt_vecs = embed_batch(provider, doc.tgt_sentences);
  const SimMatrix sim = similarity_matrix(src_vecs, tgt_vecs);
  const AlignmentPath path = align_dp(sim, cfg);

  std::vector<SentencePair> pairs;
  pairs.reserve(path.matches.size());
  for (const auto& [i, j] : path.matches) {
    SentencePair p;
    p.id = doc.src_id + ":" + std::to_string(i) + "-" + doc.tgt_id + ":" +
           std::to_string(j);
    p.rup = doc.src_sentences[static_cast<std::size_t>(i)];
    p.ron = doc.tgt_sentences[static_cast<std::size_t>(j)];
    p.source = meta.source;
    p.genre = meta.genre;
    p.orthography = meta.orthography;
    pairs.push_back(std::move(p));
  }
  if (report) {
    report->src_total = sim.rows;
    report->tgt_total = sim.cols;
    report->matched = static_cast<int>(path.matches.size());
    report->skipped_src = static_cast<int>(path.skipped_src.size());
    report->skipped_tgt = static_cast<int>(path.skipped_tgt.size());
    report->score = path.score;
  }
  return pairs;
}

// Aligns several documents, at most `jobs` in parallel.  Output order (and
// content) is independent of the job count.
inline std::vector<std::vector<SentencePair>> align_document_batch(
    const std::vector<DocumentPair>& docs, const AlignConfig& cfg,
    const ProviderConfig& provider, int jobs,
    std::vector<AlignReport>* reports = nullptr) {
  std::vector<std::vector<SentencePair>> out(docs.size());
  if (reports) reports->assign(docs.size(), AlignReport{});
  const int in_flight = std::max(1, jobs);
  std::size_t next = 0;
  while (next < docs.size()) {
    std::vector<std::pair<std::size_t, std::future<std::vector<SentencePair>>>>
        wave;
    for (int k = 0; k < in_flight && next < docs.size(); ++k, ++next) {
      const std::size_t idx = next;
      wave.emplace_back(
          idx, std::async(std::launch::async, [&, idx] {
            AlignReport rep;
            auto pairs = align_documents(docs[idx], cfg, provider, &rep);
            if (reports) (*reports)[idx] = rep;
            return pairs;
          }));
    }
    for (auto& [idx, fut] : wave) out[idx] = fut.get();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Document matching and verse pairing
// ---------------------------------------------------------------------------

// Greedy best-first title matching: repeatedly take the highest-similarity
// unmatched (a, b) pair at or above the threshold; ties break toward the
// smaller (ia, ib).  The result is sorted by ia.
inline std::vector<std::pair<int, int>> match_documents(
    const std::vector<std::string>& titles_a,
    const std::vector<std::string>& titles_b, double threshold,
    const ProviderConfig& provider) {
  std::vector<std::pair<int, int>> result;
  if (titles_a.empty() || titles_b.empty()) return result;
  const auto va = embed_batch(provider, titles_a);
  const auto vb = embed_batch(provider, titles_b);
  const SimMatrix sim = similarity_matrix(va, vb);

  struct Cand {
    float sim;
    int ia;
    int ib;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < sim.rows; ++i)
    for (int j = 0; j < sim.cols; ++j)
      if (sim.at(i, j) >= threshold) cands.push_back({sim.at(i, j), i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.sim != y.sim) return x.sim > y.sim;
    if (x.ia != y.ia) return x.ia < y.ia;
    return x.ib < y.ib;
  });

  std::vector<char> used_a(titles_a.size(), 0), used_b(titles_b.size(), 0);
  for (const auto& c : cands) {
    if (used_a[static_cast<std::size_t>(c.ia)] ||
        used_b[static_cast<std::size_t>(c.ib)])
      continue;
    used_a[static_cast<std::size_t>(c.ia)] = 1;
    used_b[static_cast<std::size_t>(c.ib)] = 1;
    result.emplace_back(c.ia, c.ib);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// Verse-aware pairing: when both sides split into the same number of
// sentences they are paired positionally; any count mismatch returns
// absent so the caller can fall back to the DP aligner.
inline std::optional<std::vector<std::pair<std::string, std::string>>>
pair_verses(const std::string& a, const std::string& b,
            const SplitterRules& rules = {}) {
  const auto sa = split_sentences(a, rules);
  const auto sb = split_sentences(b, rules);
  if (sa.size() != sb.size()) return std::nullopt;
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i)
    out.emplace_back(sa[i], sb[i]);
  return out;
}

}  // namespace rupkit
