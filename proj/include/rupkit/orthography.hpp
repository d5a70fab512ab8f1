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
// Conversion between the two Aromanian orthographic conventions.
//
// The ASCII-digraph convention (here "Cunia") writes sh, ts, lj, nj and a
// single central-vowel letter ã.  The diacritic convention (here "DIARO")
// writes ș, ț, ľ, ń and splits the central vowels by quality: â/î for the
// close central vowel (î at word edges, â inside), ă for the mid central
// vowel.  Collapsing DIARO into Cunia is a pure table lookup; expanding
// Cunia into DIARO must decide, for every ã, which central vowel it stands
// for.  That decision is made by a trained model: a word-form dictionary
// consulted first, then character 4-gram frequency masks around the site,
// then a global default biased to the mid central vowel.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "rupkit/detail/utf8.hpp"
#include "rupkit/errors.hpp"
#include "rupkit/version.hpp"

namespace rupkit {

enum class VowelClass { close_central, mid_central };

// Ordered rewrite rules for each direction.  Rules are tried in table order
// at each position and the first match wins, so longer patterns must precede
// shorter ones that share a prefix.
struct MappingTable {
  std::vector<std::pair<std::string, std::string>> cunia_to_diaro;
  std::vector<std::pair<std::string, std::string>> diaro_to_cunia;

  static const MappingTable& standard();
};

inline const MappingTable& MappingTable::standard() {
  static const MappingTable table = {
      // cunia_to_diaro: consonant digraphs only; ã is left for the model.
      {
          {"sh", "ș"}, {"Sh", "Ș"}, {"SH", "Ș"},
          {"ts", "ț"}, {"Ts", "Ț"}, {"TS", "Ț"},
          {"lj", "ľ"}, {"Lj", "Ľ"}, {"LJ", "Ľ"},
          {"nj", "ń"}, {"Nj", "Ń"}, {"NJ", "Ń"},
      },
      // diaro_to_cunia: single glyphs, including the legacy cedilla forms
      // that pre-Unicode-3.0 Romanian text uses for ș/ț.
      {
          {"ș", "sh"}, {"Ș", "SH"}, {"ş", "sh"}, {"Ş", "SH"},
          {"ț", "ts"}, {"Ț", "TS"}, {"ţ", "ts"}, {"Ţ", "TS"},
          {"ľ", "lj"}, {"Ľ", "LJ"},
          {"ń", "nj"}, {"Ń", "NJ"},
          {"â", "ã"}, {"Â", "Ã"},
          {"î", "ã"}, {"Î", "Ã"},
          {"ă", "ã"}, {"Ă", "Ã"},
      },
  };
  return table;
}

// Trained state for the Cunia -> DIARO direction.
struct OrthoModel {
  struct ClassCounts {
    std::uint64_t close = 0;
    std::uint64_t mid = 0;
    bool operator==(const ClassCounts&) const = default;
  };

  MappingTable mapping = MappingTable::standard();
  // lowercase Cunia word form -> observed lowercase DIARO forms with counts.
  std::map<std::string, std::map<std::string, std::uint64_t>> word_dict;
  // 4-character context (two letters left, two right, '#' at word edges,
  // computed on the Cunia-normalized word) -> per-class site counts.
  std::map<std::string, ClassCounts> fourgram;
  VowelClass default_class = VowelClass::mid_central;
  int version = kOrthoModelFormatVersion;
};

namespace detail {

constexpr char32_t kATilde = 0xE3;        // ã
constexpr char32_t kATildeUpper = 0xC3;   // Ã
constexpr char32_t kACirc = 0xE2;         // â
constexpr char32_t kICirc = 0xEE;         // î
constexpr char32_t kABreve = 0x103;       // ă

struct CompiledRule {
  std::u32string pattern;
  std::u32string replacement;
};

inline std::vector<CompiledRule> compile_rules(
    const std::vector<std::pair<std::string, std::string>>& rules) {
  std::vector<CompiledRule> out;
  out.reserve(rules.size());
  for (const auto& [pat, rep] : rules)
    out.push_back({decode_utf8(pat), decode_utf8(rep)});
  return out;
}

// First-match rewriting.  A single uppercase glyph that expands to a
// multi-letter uppercase replacement is demoted to title case when the next
// input character is lowercase, so "Și" becomes "Shi" rather than "SHi".
inline std::u32string apply_rules(std::u32string_view text,
                                  const std::vector<CompiledRule>& rules) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const CompiledRule* hit = nullptr;
    for (const auto& r : rules) {
      if (r.pattern.size() <= text.size() - i &&
          text.compare(i, r.pattern.size(), r.pattern) == 0) {
        hit = &r;
        break;
      }
    }
    if (!hit) {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t next = i + hit->pattern.size();
    bool demote = hit->pattern.size() == 1 && hit->replacement.size() >= 2 &&
                  is_upper_letter(hit->pattern[0]) && next < text.size() &&
                  is_lower_letter(text[next]);
    if (demote) {
      for (char32_t c : hit->replacement) {
        if (demote) {
          out.push_back(c);
          demote = false;
        } else {
          out.push_back(to_lower(c));
        }
      }
    } else {
      out.append(hit->replacement);
    }
    i = next;
  }
  return out;
}

// diaro_to_cunia rules as a per-codepoint map; used wherever positions in
// the source word must line up with positions in its Cunia key.
inline std::unordered_map<char32_t, std::u32string> single_char_map(
    const std::vector<std::pair<std::string, std::string>>& rules) {
  std::unordered_map<char32_t, std::u32string> m;
  for (const auto& [pat, rep] : rules) {
    const std::u32string p = decode_utf8(pat);
    if (p.size() != 1)
      throw DataError("diaro_to_cunia patterns must be single characters");
    m.emplace(p[0], decode_utf8(rep));
  }
  return m;
}

inline bool is_central_vowel_site(char32_t lower_cp) {
  return lower_cp == kACirc || lower_cp == kICirc || lower_cp == kABreve;
}

// Per-word transduction of a lowercase DIARO or mixed word into its Cunia
// key.  key_pos[i] is the key index produced by word[i]; sites lists the
// key positions of all central-vowel letters (ã included) in order.
struct WordKey {
  std::u32string key;
  std::vector<std::size_t> key_pos;
};

inline WordKey transduce_word(
    std::u32string_view lower_word,
    const std::unordered_map<char32_t, std::u32string>& d2c) {
  WordKey wk;
  wk.key.reserve(lower_word.size() + 2);
  wk.key_pos.reserve(lower_word.size());
  for (char32_t c : lower_word) {
    wk.key_pos.push_back(wk.key.size());
    const auto it = d2c.find(c);
    if (it == d2c.end())
      wk.key.push_back(c);
    else
      wk.key.append(it->second);
  }
  return wk;
}

// Two letters to the left and right of the site inside the key, '#' padded
// at the word edges.
inline std::string context_key(const std::u32string& key, std::size_t pos) {
  std::u32string ctx;
  ctx.push_back(pos >= 2 ? key[pos - 2] : U'#');
  ctx.push_back(pos >= 1 ? key[pos - 1] : U'#');
  ctx.push_back(pos + 1 < key.size() ? key[pos + 1] : U'#');
  ctx.push_back(pos + 2 < key.size() ? key[pos + 2] : U'#');
  return encode_utf8(ctx);
}

template <typename WordFn, typename GapFn>
void for_each_word(std::u32string_view text, WordFn&& on_word, GapFn&& on_gap) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_letter(text[i])) {
      std::size_t j = i;
      while (j < text.size() && is_letter(text[j])) ++j;
      on_word(i, j);
      i = j;
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_letter(text[j])) ++j;
      on_gap(i, j);
      i = j;
    }
  }
}

}  // namespace detail

// Collapses DIARO (or mixed) text into the ASCII-digraph Cunia convention.
// Total: characters without a rule pass through unchanged, so the function
// never fails on noisy input.
inline std::string normalize_to_cunia(
    std::string_view text,
    const MappingTable& table = MappingTable::standard()) {
  const auto rules = detail::compile_rules(table.diaro_to_cunia);
  return detail::encode_utf8(detail::apply_rules(
      detail::nfc_compose(detail::decode_utf8(text)), rules));
}

// Counts close vs mid central-vowel sites in DIARO text; the mid share is
// the accuracy of the trivial converter that always writes ă.
struct SiteClassCounts {
  std::uint64_t close = 0;
  std::uint64_t mid = 0;
};

inline SiteClassCounts count_site_classes(
    const std::vector<std::string>& diaro_texts) {
  SiteClassCounts counts;
  for (const auto& text : diaro_texts) {
    const auto u = detail::nfc_compose(detail::decode_utf8(text));
    for (char32_t c : u) {
      const char32_t l = detail::to_lower(c);
      if (l == detail::kACirc || l == detail::kICirc)
        ++counts.close;
      else if (l == detail::kABreve)
        ++counts.mid;
    }
  }
  return counts;
}

// Learns the ã-disambiguation model from DIARO text.  Every â/î/ă
// occurrence contributes one count to the word dictionary (under the
// word's Cunia key) and one to the 4-gram mask for its context.
inline OrthoModel train_ortho_model(
    const std::vector<std::string>& diaro_texts,
    const MappingTable& table = MappingTable::standard()) {
  OrthoModel model;
  model.mapping = table;
  const auto d2c = detail::single_char_map(table.diaro_to_cunia);
  // Lowercase rules only; words are lowercased before transduction.
  std::unordered_map<char32_t, std::u32string> d2c_lower;
  for (const auto& [cp, rep] : d2c) {
    std::u32string lowered;
    for (char32_t c : rep) lowered.push_back(detail::to_lower(c));
    d2c_lower.emplace(detail::to_lower(cp),
                      cp == detail::to_lower(cp) ? rep : lowered);
  }

  std::uint64_t total_sites = 0;
  for (const auto& text : diaro_texts) {
    const auto u = detail::nfc_compose(detail::decode_utf8(text));
    detail::for_each_word(
        u,
        [&](std::size_t a, std::size_t b) {
          std::u32string lower;
          lower.reserve(b - a);
          for (std::size_t i = a; i < b; ++i)
            lower.push_back(detail::to_lower(u[i]));

          bool has_site = false;
          for (char32_t c : lower)
            if (detail::is_central_vowel_site(c)) has_site = true;
          if (!has_site) return;

          const auto wk = detail::transduce_word(lower, d2c_lower);
          const std::string key = detail::encode_utf8(wk.key);
          const std::string form = detail::encode_utf8(lower);
          for (std::size_t i = 0; i < lower.size(); ++i) {
            const char32_t c = lower[i];
            if (!detail::is_central_vowel_site(c)) continue;
            model.word_dict[key][form] += 1;
            auto& counts = model.fourgram[detail::context_key(
                wk.key, wk.key_pos[i])];
            if (c == detail::kABreve)
              counts.mid += 1;
            else
              counts.close += 1;
            ++total_sites;
          }
        },
        [](std::size_t, std::size_t) {});
  }
  if (total_sites == 0) throw DataError("no training sites found");
  return model;
}

namespace detail {

// Resolves every ã in one post-rewrite word.  Dictionary first: if the
// word's Cunia key has a unique most frequent trained form and that form
// lines up with the word character by character, each site copies the
// form's glyph.  Sites the dictionary cannot settle (missing key, tied
// counts, shape mismatch) fall back to the 4-gram masks, then to the model
// default.  The close central vowel renders as î at the first or last
// letter of the word and as â inside; the mid central vowel renders as ă.
// Each site keeps the case of the input character.
inline std::u32string convert_word(
    std::u32string_view word, const OrthoModel& model,
    const std::unordered_map<char32_t, std::u32string>& d2c_lower) {
  const std::size_t n = word.size();
  std::u32string lower;
  lower.reserve(n);
  for (char32_t c : word) lower.push_back(to_lower(c));

  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < n; ++i)
    if (lower[i] == kATilde) sites.push_back(i);
  if (sites.empty()) return std::u32string(word);

  const auto wk = transduce_word(lower, d2c_lower);
  std::vector<char32_t> resolved(sites.size(), 0);

  const auto entry = model.word_dict.find(encode_utf8(wk.key));
  if (entry != model.word_dict.end()) {
    std::uint64_t best = 0;
    const std::string* best_form = nullptr;
    bool tie = false;
    for (const auto& [form, count] : entry->second) {
      if (count > best) {
        best = count;
        best_form = &form;
        tie = false;
      } else if (count == best) {
        tie = true;
      }
    }
    if (best_form && !tie) {
      const std::u32string f = decode_utf8(*best_form);
      bool aligned = f.size() == n;
      for (std::size_t i = 0; aligned && i < n; ++i) {
        if (lower[i] == kATilde)
          aligned = is_central_vowel_site(f[i]) || f[i] == kATilde;
        else
          aligned = f[i] == lower[i];
      }
      if (aligned)
        for (std::size_t k = 0; k < sites.size(); ++k)
          resolved[k] = f[sites[k]];
    }
  }

  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (resolved[k] != 0) continue;
    VowelClass cls = model.default_class;
    const auto mask = model.fourgram.find(
        context_key(wk.key, wk.key_pos[sites[k]]));
    if (mask != model.fourgram.end() &&
        mask->second.close != mask->second.mid) {
      cls = mask->second.close > mask->second.mid ? VowelClass::close_central
                                                  : VowelClass::mid_central;
    }
    if (cls == VowelClass::mid_central) {
      resolved[k] = kABreve;
    } else {
      const std::size_t i = sites[k];
      resolved[k] = (i == 0 || i + 1 == n) ? kICirc : kACirc;
    }
  }

  std::u32string out(word);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const std::size_t i = sites[k];
    out[i] = is_upper_letter(word[i]) ? to_upper(resolved[k]) : resolved[k];
  }
  return out;
}

}  // namespace detail

// Expands Cunia text into DIARO.  Deterministic digraph rewrites first,
// then per-word ã resolution through the model.  Total and deterministic:
// the same model and input always produce the same output.
inline std::string convert_to_diaro(std::string_view text,
                                    const OrthoModel& model) {
  const auto c2d = detail::compile_rules(model.mapping.cunia_to_diaro);
  const auto u = detail::apply_rules(
      detail::nfc_compose(detail::decode_utf8(text)), c2d);

  const auto d2c = detail::single_char_map(model.mapping.diaro_to_cunia);
  std::unordered_map<char32_t, std::u32string> d2c_lower;
  for (const auto& [cp, rep] : d2c) {
    if (cp != detail::to_lower(cp)) continue;
    d2c_lower.emplace(cp, rep);
  }
  for (const auto& [cp, rep] : d2c) {
    const char32_t l = detail::to_lower(cp);
    if (cp == l || d2c_lower.count(l)) continue;
    std::u32string lowered;
    for (char32_t c : rep) lowered.push_back(detail::to_lower(c));
    d2c_lower.emplace(l, lowered);
  }

  std::u32string out;
  out.reserve(u.size());
  bool any_site = false;
  for (char32_t c : u)
    if (detail::to_lower(c) == detail::kATilde) any_site = true;
  if (!any_site) return detail::encode_utf8(u);

  detail::for_each_word(
      u,
      [&](std::size_t a, std::size_t b) {
        const std::u32string_view word(u.data() + a, b - a);
        bool has_site = false;
        for (char32_t c : word)
          if (detail::to_lower(c) == detail::kATilde) has_site = true;
        if (has_site)
          out.append(detail::convert_word(word, model, d2c_lower));
        else
          out.append(word);
      },
      [&](std::size_t a, std::size_t b) {
        out.append(u, a, b - a);
      });
  return detail::encode_utf8(out);
}

// Site-level accuracy of convert_to_diaro against held-out DIARO text.
// Each â/î/ă in the reference is one site; a site is correct when the
// converted text carries the same glyph at the same position of the same
// word.  A word whose predicted site sequence has the wrong length counts
// all its sites wrong.
inline double evaluate_converter(const std::vector<std::string>& diaro_texts,
                                 const OrthoModel& model) {
  const auto d2c = detail::single_char_map(model.mapping.diaro_to_cunia);
  std::uint64_t correct = 0;
  std::uint64_t total = 0;

  auto word_sites = [](const std::u32string& u) {
    std::vector<std::vector<char32_t>> per_word;
    detail::for_each_word(
        u,
        [&](std::size_t a, std::size_t b) {
          std::vector<char32_t> sites;
          for (std::size_t i = a; i < b; ++i) {
            const char32_t l = detail::to_lower(u[i]);
            if (detail::is_central_vowel_site(l)) sites.push_back(l);
          }
          per_word.push_back(std::move(sites));
        },
        [](std::size_t, std::size_t) {});
    return per_word;
  };

  for (const auto& text : diaro_texts) {
    const auto u = detail::nfc_compose(detail::decode_utf8(text));
    std::uint64_t line_sites = 0;
    for (char32_t c : u)
      if (detail::is_central_vowel_site(detail::to_lower(c))) ++line_sites;
    if (line_sites == 0) continue;
    total += line_sites;

    std::u32string cunia;
    cunia.reserve(u.size());
    for (char32_t c : u) {
      const auto it = d2c.find(c);
      if (it == d2c.end())
        cunia.push_back(c);
      else
        cunia.append(it->second);
    }
    const std::string converted =
        convert_to_diaro(detail::encode_utf8(cunia), model);
    const auto gold = word_sites(u);
    const auto pred = word_sites(detail::decode_utf8(converted));
    // Digraph rewrites never touch word boundaries, so the word counts
    // agree; guard anyway so malformed custom tables cannot overcount.
    if (gold.size() != pred.size()) continue;
    for (std::size_t w = 0; w < gold.size(); ++w) {
      if (gold[w].size() != pred[w].size()) continue;
      for (std::size_t k = 0; k < gold[w].size(); ++k)
        if (gold[w][k] == pred[w][k]) ++correct;
    }
  }
  if (total == 0) throw DataError("no evaluation sites found");
  return static_cast<double>(correct) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Model serialization
// ---------------------------------------------------------------------------

inline void save_ortho_model(const OrthoModel& model, std::ostream& out) {
  nlohmann::json doc;
  doc["version"] = model.version;
  doc["default"] =
      model.default_class == VowelClass::mid_central ? "mid" : "close";
  nlohmann::json mapping;
  auto rules_to_json = [](const auto& rules) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pat, rep] : rules)
      arr.push_back(nlohmann::json::array({pat, rep}));
    return arr;
  };
  mapping["cunia_to_diaro"] = rules_to_json(model.mapping.cunia_to_diaro);
  mapping["diaro_to_cunia"] = rules_to_json(model.mapping.diaro_to_cunia);
  doc["mapping"] = std::move(mapping);
  nlohmann::json wd = nlohmann::json::object();
  for (const auto& [key, forms] : model.word_dict) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [form, count] : forms) entry[form] = count;
    wd[key] = std::move(entry);
  }
  doc["word_dict"] = std::move(wd);
  nlohmann::json fg = nlohmann::json::object();
  for (const auto& [ctx, counts] : model.fourgram)
    fg[ctx] = {{"close", counts.close}, {"mid", counts.mid}};
  doc["fourgram"] = std::move(fg);
  out << doc.dump() << '\n';
}

inline void save_ortho_model(const OrthoModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  save_ortho_model(model, out);
  if (!out) throw DataError("write failed: " + path);
}

inline OrthoModel load_ortho_model(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("model must be a JSON object");
  OrthoModel model;
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    throw DataError("model missing integer field version");
  model.version = doc["version"].get<int>();
  if (model.version != kOrthoModelFormatVersion)
    throw DataError("unsupported model version " +
                    std::to_string(model.version));
  const std::string def = doc.value("default", "mid");
  if (def == "mid")
    model.default_class = VowelClass::mid_central;
  else if (def == "close")
    model.default_class = VowelClass::close_central;
  else
    throw DataError("invalid model default '" + def + "'");

  auto rules_from_json = [](const nlohmann::json& arr) {
    std::vector<std::pair<std::string, std::string>> rules;
    for (const auto& r : arr) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_string() ||
          !r[1].is_string())
        throw DataError("mapping rules must be [pattern, replacement] pairs");
      rules.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
    return rules;
  };
  if (doc.contains("mapping")) {
    const auto& m = doc["mapping"];
    if (!m.is_object() || !m.contains("cunia_to_diaro") ||
        !m.contains("diaro_to_cunia"))
      throw DataError("model mapping must carry both rule tables");
    model.mapping.cunia_to_diaro = rules_from_json(m["cunia_to_diaro"]);
    model.mapping.diaro_to_cunia = rules_from_json(m["diaro_to_cunia"]);
  }
  if (doc.contains("word_dict")) {
    if (!doc["word_dict"].is_object())
      throw DataError("model word_dict must be an object");
    for (const auto& [key, forms] : doc["word_dict"].items()) {
      if (!forms.is_object())
        throw DataError("word_dict entries must be objects");
      for (const auto& [form, count] : forms.items()) {
        if (!count.is_number_unsigned() && !count.is_number_integer())
          throw DataError("word_dict counts must be integers");
        model.word_dict[key][form] = count.get<std::uint64_t>();
      }
    }
  }
  if (doc.contains("fourgram")) {
    if (!doc["fourgram"].is_object())
      throw DataError("model fourgram must be an object");
    for (const auto& [ctx, counts] : doc["fourgram"].items()) {
      if (!counts.is_object())
        throw DataError("fourgram entries must be objects");
      OrthoModel::ClassCounts cc;
      cc.close = counts.value("close", std::uint64_t{0});
      cc.mid = counts.value("mid", std::uint64_t{0});
      model.fourgram[ctx] = cc;
    }
  }
  return model;
}

inline OrthoModel load_ortho_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return load_ortho_model(in);
}

}  // namespace rupkit
