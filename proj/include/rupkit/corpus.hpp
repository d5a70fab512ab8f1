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
// Core corpus data model: aligned sentence pairs, document pairs awaiting
// alignment, and the source manifest that drives corpus assembly.  Pairs are
// serialized as JSONL, one object per line, which diffs well under version
// control and streams through standard tooling.

#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rupkit/detail/utf8.hpp"
#include "rupkit/errors.hpp"

namespace rupkit {

enum class Orthography { cunia, diaro };
enum class Split { train, dev, test };
enum class SourceRole { trainable, dev_only, test_only };

inline const char* to_string(Orthography o) {
  return o == Orthography::cunia ? "cunia" : "diaro";
}

inline const char* to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    default: return "test";
  }
}

inline const char* to_string(SourceRole r) {
  switch (r) {
    case SourceRole::trainable: return "trainable";
    case SourceRole::dev_only: return "dev_only";
    default: return "test_only";
  }
}

inline std::optional<Orthography> parse_orthography(std::string_view s) {
  if (s == "cunia") return Orthography::cunia;
  if (s == "diaro") return Orthography::diaro;
  return std::nullopt;
}

inline std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  return std::nullopt;
}

inline std::optional<SourceRole> parse_source_role(std::string_view s) {
  if (s == "trainable") return SourceRole::trainable;
  if (s == "dev_only") return SourceRole::dev_only;
  if (s == "test_only") return SourceRole::test_only;
  return std::nullopt;
}

// One aligned sentence pair.  `eng` is present only for the three-way
// sources; `split` is unset until a split plan has been applied.
struct SentencePair {
  std::string id;
  std::string rup;
  std::string ron;
  std::optional<std::string> eng;
  std::string source;
  std::string genre;
  Orthography orthography = Orthography::cunia;
  std::optional<Split> split;

  bool operator==(const SentencePair&) const = default;
};

// Two documents believed to be translations of each other, pre-alignment.
struct DocumentPair {
  std::string src_id;
  std::string tgt_id;
  std::vector<std::string> src_sentences;
  std::vector<std::string> tgt_sentences;
};

// Declares where each corpus source comes from and how the splitter may use
// it.
struct SourceManifest {
  struct Entry {
    std::string source;
    std::string genre;
    SourceRole role = SourceRole::trainable;
    std::string path;
  };
  std::vector<Entry> entries;

  const Entry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.source == name) return &e;
    return nullptr;
  }
};

namespace detail {

inline std::string jsonl_err(std::size_t line_no, const std::string& msg) {
  return "line " + std::to_string(line_no) + ": " + msg;
}

inline std::string require_string_field(const nlohmann::json& obj,
                                        const char* key, std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw DataError(jsonl_err(line_no, std::string("missing field ") + key));
  if (!it->is_string())
    throw DataError(
        jsonl_err(line_no, std::string("field ") + key + " must be a string"));
  return it->get<std::string>();
}

}  // namespace detail

// Reads a JSONL corpus.  All string fields are normalized to NFC so that
// downstream lookups never have to care about decomposed input; ids must be
// unique across the stream.  Errors carry 1-based physical line numbers.
inline std::vector<SentencePair> read_corpus(std::istream& in) {
  std::vector<SentencePair> out;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  static const std::set<std::string> known_keys = {
      "id", "rup", "ron", "eng", "source", "genre", "orthography", "split"};
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!detail::is_space(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(
          detail::jsonl_err(line_no, std::string("invalid JSON: ") + e.what()));
    }
    if (!obj.is_object())
      throw DataError(detail::jsonl_err(line_no, "record must be an object"));
    for (const auto& [key, _] : obj.items())
      if (known_keys.find(key) == known_keys.end())
        throw DataError(detail::jsonl_err(line_no, "unknown field " + key));

    SentencePair p;
    p.id = rupkit::detail::nfc_compose_utf8(
        detail::require_string_field(obj, "id", line_no));
    p.rup = rupkit::detail::nfc_compose_utf8(
        detail::require_string_field(obj, "rup", line_no));
    p.ron = rupkit::detail::nfc_compose_utf8(
        detail::require_string_field(obj, "ron", line_no));
    p.source = rupkit::detail::nfc_compose_utf8(
        detail::require_string_field(obj, "source", line_no));
    p.genre = rupkit::detail::nfc_compose_utf8(
        detail::require_string_field(obj, "genre", line_no));
    const std::string orth =
        detail::require_string_field(obj, "orthography", line_no);
    const auto parsed_orth = parse_orthography(orth);
    if (!parsed_orth)
      throw DataError(
          detail::jsonl_err(line_no, "invalid orthography '" + orth + "'"));
    p.orthography = *parsed_orth;

    if (obj.contains("eng"))
      p.eng = rupkit::detail::nfc_compose_utf8(
          detail::require_string_field(obj, "eng", line_no));
    if (obj.contains("split")) {
      const std::string sp =
          detail::require_string_field(obj, "split", line_no);
      const auto parsed_split = parse_split(sp);
      if (!parsed_split)
        throw DataError(
            detail::jsonl_err(line_no, "invalid split '" + sp + "'"));
      p.split = *parsed_split;
    }

    if (p.id.empty())
      throw DataError(detail::jsonl_err(line_no, "empty field id"));
    if (p.rup.empty())
      throw DataError(detail::jsonl_err(line_no, "empty field rup"));
    if (p.ron.empty())
      throw DataError(detail::jsonl_err(line_no, "empty field ron"));
    if (!seen_ids.insert(p.id).second)
      throw DataError(
          detail::jsonl_err(line_no, "duplicate id '" + p.id + "'"));
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<SentencePair> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return read_corpus(in);
}

inline void write_corpus(const std::vector<SentencePair>& corpus,
                         std::ostream& out) {
  for (const auto& p : corpus) {
    nlohmann::json obj;
    obj["id"] = p.id;
    obj["rup"] = p.rup;
    obj["ron"] = p.ron;
    if (p.eng) obj["eng"] = *p.eng;
    obj["source"] = p.source;
    obj["genre"] = p.genre;
    obj["orthography"] = to_string(p.orthography);
    if (p.split) obj["split"] = to_string(*p.split);
    out << obj.dump() << '\n';
  }
}

inline void write_corpus(const std::vector<SentencePair>& corpus,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  write_corpus(corpus, out);
  if (!out) throw DataError("write failed: " + path);
}

namespace detail {

inline std::string tsv_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

// Tab-separated dump (id, rup, ron, eng) for spreadsheet inspection.  Tabs,
// newlines and backslashes inside text are backslash-escaped so the column
// structure survives arbitrary sentence content.
inline void write_corpus_tsv(const std::vector<SentencePair>& corpus,
                             std::ostream& out) {
  for (const auto& p : corpus) {
    out << detail::tsv_escape(p.id) << '\t' << detail::tsv_escape(p.rup)
        << '\t' << detail::tsv_escape(p.ron) << '\t'
        << (p.eng ? detail::tsv_escape(*p.eng) : std::string()) << '\n';
  }
}

inline void write_corpus_tsv(const std::vector<SentencePair>& corpus,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  write_corpus_tsv(corpus, out);
  if (!out) throw DataError("write failed: " + path);
}

// Manifest file: either {"entries": [...]} or a bare array of entries, each
// {"source", "genre", "role", "path"}.
inline SourceManifest read_manifest(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid manifest JSON: ") + e.what());
  }
  const nlohmann::json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object() && doc.contains("entries") &&
             doc["entries"].is_array()) {
    arr = &doc["entries"];
  } else {
    throw DataError("manifest must be an array or {\"entries\": [...]}");
  }
  SourceManifest m;
  std::set<std::string> seen;
  std::size_t idx = 0;
  for (const auto& e : *arr) {
    ++idx;
    if (!e.is_object())
      throw DataError("manifest entry " + std::to_string(idx) +
                      " must be an object");
    SourceManifest::Entry entry;
    auto get = [&](const char* key, bool required) -> std::string {
      const auto it = e.find(key);
      if (it == e.end()) {
        if (required)
          throw DataError("manifest entry " + std::to_string(idx) +
                          ": missing field " + key);
        return {};
      }
      if (!it->is_string())
        throw DataError("manifest entry " + std::to_string(idx) + ": field " +
                        key + " must be a string");
      return it->get<std::string>();
    };
    entry.source = rupkit::detail::nfc_compose_utf8(get("source", true));
    entry.genre = rupkit::detail::nfc_compose_utf8(get("genre", false));
    const std::string role = get("role", true);
    const auto parsed = parse_source_role(role);
    if (!parsed)
      throw DataError("manifest entry " + std::to_string(idx) +
                      ": invalid role '" + role + "'");
    entry.role = *parsed;
    entry.path = get("path", false);
    if (entry.source.empty())
      throw DataError("manifest entry " + std::to_string(idx) +
                      ": empty source name");
    if (!seen.insert(entry.source).second)
      throw DataError("duplicate manifest source '" + entry.source + "'");
    m.entries.push_back(std::move(entry));
  }
  return m;
}

inline SourceManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return read_manifest(in);
}

}  // namespace rupkit
