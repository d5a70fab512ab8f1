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

// Shared random-input generators and brute-force oracles for the property
// suites.  Everything is seeded through std::mt19937_64 and rupkit's own
// uniform helpers so runs are reproducible across platforms.

#ifndef RUPKIT_TESTS_SUPPORT_GEN_HPP_
#define RUPKIT_TESTS_SUPPORT_GEN_HPP_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <rupkit/align.hpp>
#include <rupkit/corpus.hpp>
#include <rupkit/detail/rng.hpp>
#include <rupkit/embeddings.hpp>

namespace testgen {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rupkit::detail::uniform_below(
      rng, static_cast<std::uint64_t>(n)));
}

// One Cunia word: lowercase letters plus ã, optionally Title or ALLCAPS.
// A Title-cased word that is nothing but a digraph ("Sh") cannot round-trip
// through the single-glyph conventions, so the generator pads those.
inline std::string random_cunia_word(std::mt19937_64& rng) {
  static const std::vector<std::string> atoms = {
      "a", "b", "c", "d", "e", "f", "g", "h", "i", "l", "m", "n",
      "o", "p", "r", "s", "t", "u", "v", "z", "ã",  // ã
      "sh", "ts", "lj", "nj"};
  const std::size_t len = 1 + pick(rng, 5);
  std::string word;
  for (std::size_t i = 0; i < len; ++i) word += atoms[pick(rng, atoms.size())];

  const std::size_t style = pick(rng, 4);  // 0,1: lower  2: Title  3: CAPS
  auto upcase = [](const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
      std::size_t j = i;
      const char32_t c = rupkit::detail::decode_utf8_at(s, j);
      rupkit::detail::append_utf8(out, rupkit::detail::to_upper(c));
      i = j;
    }
    return out;
  };
  if (style == 3) return upcase(word);
  if (style == 2) {
    // Title case: first codepoint only.  A bare digraph word ("sh") would
    // titlecase to "Sh", collapse to a single glyph, and come back as the
    // all-caps "SH"; pad it so a lowercase letter follows.
    const bool bare_digraph =
        word.size() == 2 && (word == "sh" || word == "ts" || word == "lj" ||
                             word == "nj");
    if (bare_digraph) word += "a";
    std::size_t first_end = 0;
    const char32_t head = rupkit::detail::decode_utf8_at(word, first_end);
    std::string out;
    rupkit::detail::append_utf8(out, rupkit::detail::to_upper(head));
    return out + word.substr(first_end);
  }
  return word;
}

inline std::string random_cunia_string(std::mt19937_64& rng) {
  static const std::vector<std::string> gaps = {" ",  " ",  " ", ", ",
                                                ". ", " -  ", "\t"};
  const std::size_t words = 1 + pick(rng, 6);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) text += gaps[pick(rng, gaps.size())];
    if (pick(rng, 12) == 0) text += std::to_string(pick(rng, 1000));
    else text += random_cunia_word(rng);
  }
  if (pick(rng, 3) == 0) text += ".";
  return text;
}

// NFC-stable unicode sample text for corpus round trips.
inline std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "un",    "om",     "bun",  "avea", "doi",  "ficiori", "cãndu",
      "munți", "și", "dzua", "în", "până",
      "lumă", "ľertu", "ńel", "tsã", "sh-",
      "\"zbor\"", "3,5", "•"};
  const std::size_t n = 1 + pick(rng, 7);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += " ";
    text += pieces[pick(rng, pieces.size())];
  }
  return text;
}

inline std::vector<rupkit::SentencePair> random_corpus(std::mt19937_64& rng,
                                                       std::size_t max_rows) {
  static const std::vector<std::string> sources = {"bible", "radio", "lyrics"};
  static const std::vector<std::string> genres = {"religious", "news", ""};
  std::vector<rupkit::SentencePair> corpus(pick(rng, max_rows + 1));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto& p = corpus[i];
    p.id = "id-" + std::to_string(i);
    p.rup = random_text(rng);
    p.ron = random_text(rng);
    if (pick(rng, 2)) p.eng = random_text(rng);
    p.source = sources[pick(rng, sources.size())];
    p.genre = genres[pick(rng, genres.size())];
    p.orthography = pick(rng, 2) ? rupkit::Orthography::cunia
                                 : rupkit::Orthography::diaro;
    const std::size_t s = pick(rng, 4);
    if (s == 1) p.split = rupkit::Split::train;
    else if (s == 2) p.split = rupkit::Split::dev;
    else if (s == 3) p.split = rupkit::Split::test;
  }
  return corpus;
}

inline rupkit::SimMatrix random_sim(std::mt19937_64& rng, int rows, int cols) {
  rupkit::SimMatrix sim;
  sim.rows = rows;
  sim.cols = cols;
  sim.data.resize(static_cast<std::size_t>(rows) * cols);
  for (auto& v : sim.data)
    v = static_cast<float>(rupkit::detail::uniform_sym(rng));
  return sim;
}

// Exhaustive maximum over all monotone match sets.  Scores accumulate in
// match order exactly like the DP's path sums, so agreement is exact, not
// approximate.  Feasible through 8x8 (sum over k of C(8,k)^2 sets).
inline double oracle_align_score(const rupkit::SimMatrix& sim,
                                 const rupkit::AlignConfig& cfg) {
  double best = 0.0;
  const auto recurse = [&](auto&& self, int i0, int j0, double acc) -> void {
    if (acc > best) best = acc;
    for (int i = i0; i < sim.rows; ++i) {
      for (int j = j0; j < sim.cols; ++j) {
        const double s = sim.at(i, j);
        if (s < cfg.min_sim) continue;
        self(self, i + 1, j + 1, acc + (s - cfg.match_penalty));
      }
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return best;
}

// Validates every AlignmentPath invariant against its source matrix.
inline bool path_invariants_hold(const rupkit::AlignmentPath& path,
                                 const rupkit::SimMatrix& sim,
                                 const rupkit::AlignConfig& cfg,
                                 std::string* why = nullptr) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<char> src_seen(sim.rows, 0), tgt_seen(sim.cols, 0);
  int last_i = -1, last_j = -1;
  double score = 0.0;
  for (const auto& [i, j] : path.matches) {
    if (i <= last_i || j <= last_j) return fail("matches not increasing");
    if (i < 0 || i >= sim.rows || j < 0 || j >= sim.cols)
      return fail("match out of range");
    if (sim.at(i, j) < cfg.min_sim) return fail("match below min_sim");
    src_seen[i] = tgt_seen[j] = 1;
    score += sim.at(i, j) - cfg.match_penalty;
    last_i = i;
    last_j = j;
  }
  for (int i : path.skipped_src) {
    if (i < 0 || i >= sim.rows || src_seen[i]) return fail("bad skipped_src");
    src_seen[i] = 1;
  }
  for (int j : path.skipped_tgt) {
    if (j < 0 || j >= sim.cols || tgt_seen[j]) return fail("bad skipped_tgt");
    tgt_seen[j] = 1;
  }
  if (std::count(src_seen.begin(), src_seen.end(), 1) != sim.rows)
    return fail("src indices not covered");
  if (std::count(tgt_seen.begin(), tgt_seen.end(), 1) != sim.cols)
    return fail("tgt indices not covered");
  if (score != path.score) return fail("score mismatch with matches");
  return true;
}

}  // namespace testgen

#endif  // RUPKIT_TESTS_SUPPORT_GEN_HPP_
