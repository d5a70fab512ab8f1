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

#include <random>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include <rupkit/corpus.hpp>

#include "support/gen.hpp"

using rupkit::DataError;
using rupkit::Orthography;
using rupkit::SentencePair;
using rupkit::Split;

namespace {

std::vector<SentencePair> parse(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return rupkit::read_corpus(in);
}

}  // namespace

TEST_CASE("read_corpus parses a well formed file") {
  const std::string text =
      R"({"id":"b.1","rup":"Tu bitsearcã","ron":"În biserică","source":"bible","genre":"religious","orthography":"cunia"})"
      "\n"
      "\n"  // blank lines are skipped
      R"({"id":"b.2","rup":"doi ficiori","ron":"doi feciori","eng":"two sons","source":"bible","genre":"religious","orthography":"diaro","split":"dev"})"
      "\n";
  const auto corpus = parse(text);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].id == "b.1");
  CHECK(corpus[0].orthography == Orthography::cunia);
  CHECK_FALSE(corpus[0].eng.has_value());
  CHECK_FALSE(corpus[0].split.has_value());
  CHECK(corpus[1].eng == "two sons");
  CHECK(corpus[1].split == Split::dev);
  CHECK(corpus[1].orthography == Orthography::diaro);
}

TEST_CASE("read_corpus normalizes text fields to composed form") {
  // rup holds a decomposed a + combining tilde.
  const auto corpus = parse(
      R"({"id":"x","rup":"cãndu","ron":"când","source":"s","genre":"g","orthography":"cunia"})"
      "\n");
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].rup == "cãndu");
  CHECK(corpus[0].ron == "când");
}

TEST_CASE("read_corpus reports physical line numbers and field errors") {
  const std::string good =
      R"({"id":"a","rup":"r","ron":"o","source":"s","genre":"g","orthography":"cunia"})";

  CHECK_THROWS_WITH(
      parse(good + "\n" +
            R"({"id":"b","rup":"r","source":"s","genre":"g","orthography":"cunia"})" +
            "\n"),
      Catch::Matchers::ContainsSubstring("line 2: missing field ron"));

  // The blank line still counts for numbering.
  CHECK_THROWS_WITH(parse(good + "\n\n{bad json\n"),
                    Catch::Matchers::ContainsSubstring("line 3"));

  CHECK_THROWS_WITH(
      parse(R"({"id":"a","rup":"r","ron":"o","source":"s","genre":"g","orthography":"klingon"})"
            "\n"),
      Catch::Matchers::ContainsSubstring("invalid orthography 'klingon'"));

  CHECK_THROWS_WITH(
      parse(R"({"id":"a","rup":"r","ron":"o","source":"s","genre":"g","orthography":"cunia","split":"half"})"
            "\n"),
      Catch::Matchers::ContainsSubstring("invalid split 'half'"));

  CHECK_THROWS_WITH(
      parse(R"({"id":"a","rup":"r","ron":"o","source":"s","genre":"g","orthography":"cunia","extra":1})"
            "\n"),
      Catch::Matchers::ContainsSubstring("unknown field"));

  CHECK_THROWS_WITH(
      parse(R"({"id":7,"rup":"r","ron":"o","source":"s","genre":"g","orthography":"cunia"})"
            "\n"),
      Catch::Matchers::ContainsSubstring("field id must be a string"));

  CHECK_THROWS_WITH(
      parse(R"({"id":"","rup":"r","ron":"o","source":"s","genre":"g","orthography":"cunia"})"
            "\n"),
      Catch::Matchers::ContainsSubstring("empty field id"));

  CHECK_THROWS_WITH(parse(good + "\n" + good + "\n"),
                    Catch::Matchers::ContainsSubstring("duplicate id 'a'"));
}

TEST_CASE("read_corpus accepts windows line endings") {
  const auto corpus = parse(
      "{\"id\":\"a\",\"rup\":\"r\",\"ron\":\"o\",\"source\":\"s\","
      "\"genre\":\"g\",\"orthography\":\"cunia\"}\r\n");
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].ron == "o");
}

TEST_CASE("write then read corpus is the identity") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const auto corpus = testgen::random_corpus(rng, 6);
    std::ostringstream out;
    rupkit::write_corpus(corpus, out);
    CHECK(parse(out.str()) == corpus);
  }
}

TEST_CASE("written corpus omits absent optionals") {
  SentencePair p;
  p.id = "x";
  p.rup = "r";
  p.ron = "o";
  p.source = "s";
  p.genre = "g";
  std::ostringstream out;
  rupkit::write_corpus({p}, out);
  CHECK(out.str().find("\"eng\"") == std::string::npos);
  CHECK(out.str().find("\"split\"") == std::string::npos);
  CHECK(out.str().find('\n') == out.str().size() - 1);
}

TEST_CASE("tsv export escapes control characters") {
  SentencePair p;
  p.id = "x";
  p.rup = "a\tb";
  p.ron = "c\nd\\e";
  p.eng = "f\rg";
  p.source = "s";
  p.genre = "g";
  std::ostringstream out;
  rupkit::write_corpus_tsv({p}, out);
  CHECK(out.str() == "x\ta\\tb\tc\\nd\\\\e\tf\\rg\n");
}

TEST_CASE("manifest accepts both top level shapes") {
  const std::string bare =
      R"([{"source":"bible","genre":"religious","role":"trainable"}])";
  const std::string wrapped =
      R"({"entries":[{"source":"bible","genre":"religious","role":"trainable","path":"b.jsonl"}]})";

  std::istringstream in1(bare);
  auto m1 = rupkit::read_manifest(in1);
  REQUIRE(m1.entries.size() == 1);
  CHECK(m1.entries[0].role == rupkit::SourceRole::trainable);
  CHECK(m1.find("bible") != nullptr);
  CHECK(m1.find("radio") == nullptr);

  std::istringstream in2(wrapped);
  auto m2 = rupkit::read_manifest(in2);
  REQUIRE(m2.entries.size() == 1);
  CHECK(m2.entries[0].path == "b.jsonl");
}

TEST_CASE("manifest rejects duplicates and bad roles") {
  std::istringstream dup(
      R"([{"source":"a","role":"trainable"},{"source":"a","role":"dev_only"}])");
  CHECK_THROWS_AS(rupkit::read_manifest(dup), DataError);

  std::istringstream bad(R"([{"source":"a","role":"sometimes"}])");
  CHECK_THROWS_AS(rupkit::read_manifest(bad), DataError);
}
