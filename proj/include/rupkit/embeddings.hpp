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
// Sentence embedding access.  The alignment pipeline only needs unit-norm
// vectors and cosine similarities; where the vectors come from is behind
// ProviderConfig: an HTTP service, a precomputed lookup file, or a
// deterministic hash-based mock for tests and offline work.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "rupkit/detail/rng.hpp"
#include "rupkit/detail/utf8.hpp"
#include "rupkit/errors.hpp"

namespace rupkit {

using EmbeddingVector = std::vector<float>;

enum class ProviderKind { mock, file, http };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::mock;
  std::string endpoint;   // http: e.g. http://127.0.0.1:8000/embed
  std::string file_path;  // file: JSONL of {"text": ..., "vec": [...]}
  int batch_size = 32;
  int timeout_ms = 5000;
  int retries = 0;
  int max_in_flight = 1;
  // Mock provider shape.  32 dimensions keep tests fast; raise the
  // dimension when an experiment needs the cross-similarity noise floor of
  // hash vectors pushed down (it scales as 1/sqrt(dim)).
  int mock_dim = 32;
  // Mock provider: maps a sentence to the string that gets hashed.  The
  // default (empty) hashes the sentence itself; tests inject key functions
  // to plant known similarity structure.
  std::function<std::string(const std::string&)> mock_key;
};

inline void l2_normalize(EmbeddingVector& v) {
  double ss = 0.0;
  for (float x : v) ss += static_cast<double>(x) * static_cast<double>(x);
  if (ss == 0.0) throw DataError("cannot normalize a zero embedding");
  const double norm = std::sqrt(ss);
  for (float& x : v) x = static_cast<float>(static_cast<double>(x) / norm);
}

namespace detail {

inline EmbeddingVector mock_embedding(std::string_view key, int dim) {
  std::mt19937_64 rng(mix64(fnv1a64(key)));
  EmbeddingVector v(static_cast<std::size_t>(dim));
  for (float& x : v) x = static_cast<float>(uniform_sym(rng));
  l2_normalize(v);
  return v;
}

// File-backed lookup tables are cached per path for the life of the
// process; alignment runs query the same file once per batch.
inline const std::unordered_map<std::string, EmbeddingVector>&
embedding_file(const std::string& path) {
  static std::mutex mu;
  static std::unordered_map<
      std::string, std::unordered_map<std::string, EmbeddingVector>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(path);
  if (it != cache.end()) return it->second;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path);
  std::unordered_map<std::string, EmbeddingVector> table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("embedding file line " + std::to_string(line_no) +
                      ": invalid JSON: " + e.what());
    }
    if (!obj.is_object() || !obj.contains("text") || !obj.contains("vec") ||
        !obj["text"].is_string() || !obj["vec"].is_array())
      throw DataError("embedding file line " + std::to_string(line_no) +
                      ": expected {\"text\": ..., \"vec\": [...]}");
    EmbeddingVector v;
    v.reserve(obj["vec"].size());
    for (const auto& x : obj["vec"]) {
      if (!x.is_number())
        throw DataError("embedding file line " + std::to_string(line_no) +
                        ": vec entries must be numbers");
      v.push_back(x.get<float>());
    }
    if (dim == 0) dim = v.size();
    if (v.size() != dim || v.empty())
      throw DataError("embedding file line " + std::to_string(line_no) +
                      ": inconsistent vector dimension");
    l2_normalize(v);
    // Last entry wins so corrected rows can simply be appended.
    table[nfc_compose_utf8(obj["text"].get<std::string>())] = std::move(v);
  }
  return cache.emplace(path, std::move(table)).first->second;
}

inline std::vector<EmbeddingVector> http_embed_one_batch(
    const ProviderConfig& cfg, const std::vector<std::string>& texts) {
  // Split the endpoint into scheme://host[:port] and path.
  const auto scheme_end = cfg.endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw TransportError("invalid endpoint: " + cfg.endpoint);
  const auto path_start = cfg.endpoint.find('/', scheme_end + 3);
  const std::string base = path_start == std::string::npos
                               ? cfg.endpoint
                               : cfg.endpoint.substr(0, path_start);
  const std::string path = path_start == std::string::npos
                               ? std::string("/")
                               : cfg.endpoint.substr(path_start);

  nlohmann::json req;
  req["texts"] = texts;
  const std::string body = req.dump();

  std::string last_error;
  const int attempts = cfg.retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    httplib::Client client(base);
    const time_t sec = cfg.timeout_ms / 1000;
    const time_t usec = (cfg.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      throw TransportError(std::string("malformed provider response: ") +
                           e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") ||
        !doc.contains("embeddings") || !doc["dim"].is_number_integer() ||
        !doc["embeddings"].is_array())
      throw TransportError(
          "malformed provider response: expected {\"dim\", \"embeddings\"}");
    const std::size_t dim = doc["dim"].get<std::size_t>();
    const auto& rows = doc["embeddings"];
    if (rows.size() != texts.size())
      throw TransportError("provider returned " + std::to_string(rows.size()) +
                           " embeddings for " + std::to_string(texts.size()) +
                           " texts");
    std::vector<EmbeddingVector> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != dim)
        throw TransportError(
            "provider embedding does not match declared dimension");
      EmbeddingVector v;
      v.reserve(dim);
      for (const auto& x : row) {
        if (!x.is_number())
          throw TransportError("provider embedding entries must be numbers");
        v.push_back(x.get<float>());
      }
      l2_normalize(v);
      out.push_back(std::move(v));
    }
    return out;
  }
  throw TransportError("embedding request to " + cfg.endpoint +
                       " failed after " + std::to_string(attempts) +
                       " attempt(s): " + last_error);
}

}  // namespace detail

// Embeds a list of texts.  The result is order-aligned with the input and
// every vector is unit-norm.  Requests to remote providers go out in
// batches of cfg.batch_size with at most cfg.max_in_flight in parallel;
// neither setting affects the result, only the traffic shape.
inline std::vector<EmbeddingVector> embed_batch(
    const ProviderConfig& cfg, const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out(texts.size());
  if (texts.empty()) return out;
  if (cfg.batch_size <= 0) throw DataError("batch_size must be positive");

  switch (cfg.kind) {
    case ProviderKind::mock: {
      for (std::size_t i = 0; i < texts.size(); ++i) {
        const std::string key =
            cfg.mock_key ? cfg.mock_key(texts[i]) : texts[i];
        out[i] = detail::mock_embedding(key, cfg.mock_dim);
      }
      return out;
    }
    case ProviderKind::file: {
      const auto& table = detail::embedding_file(cfg.file_path);
      for (std::size_t i = 0; i < texts.size(); ++i) {
        const std::string key = detail::nfc_compose_utf8(texts[i]);
        const auto it = table.find(key);
        if (it == table.end())
          throw DataError("no embedding for text: " + texts[i]);
        out[i] = it->second;
      }
      return out;
    }
    case ProviderKind::http: {
      struct BatchRange {
        std::size_t begin, end;
      };
      std::vector<BatchRange> batches;
      for (std::size_t b = 0; b < texts.size();
           b += static_cast<std::size_t>(cfg.batch_size)) {
        batches.push_back(
            {b, std::min(texts.size(),
                         b + static_cast<std::size_t>(cfg.batch_size))});
      }
      const int in_flight = std::max(1, cfg.max_in_flight);
      std::size_t next = 0;
      while (next < batches.size()) {
        std::vector<std::pair<std::size_t, std::future<std::vector<EmbeddingVector>>>>
            wave;
        for (int k = 0; k < in_flight && next < batches.size(); ++k, ++next) {
          const auto range = batches[next];
          std::vector<std::string> chunk(texts.begin() + range.begin,
                                         texts.begin() + range.end);
          wave.emplace_back(
              range.begin,
              std::async(std::launch::async,
                         [cfg, chunk = std::move(chunk)] {
                           return detail::http_embed_one_batch(cfg, chunk);
                         }));
        }
        for (auto& [offset, fut] : wave) {
          auto vecs = fut.get();
          for (std::size_t i = 0; i < vecs.size(); ++i)
            out[offset + i] = std::move(vecs[i]);
        }
      }
      // All batches must agree on the dimension.
      const std::size_t dim = out.front().size();
      for (const auto& v : out)
        if (v.size() != dim)
          throw TransportError("provider returned mixed dimensions");
      return out;
    }
  }
  throw DataError("unknown provider kind");
}

// Dense row-major similarity matrix.
struct SimMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<float> data;

  float at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  float& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
};

// Cosine similarities of two unit-norm embedding lists.  Dots are
// accumulated in double and clamped to [-1, 1] before the float store, so
// transposing the arguments transposes the matrix exactly.
inline SimMatrix similarity_matrix(const std::vector<EmbeddingVector>& a,
                                   const std::vector<EmbeddingVector>& b) {
  SimMatrix m;
  m.rows = static_cast<int>(a.size());
  m.cols = static_cast<int>(b.size());
  m.data.resize(a.size() * b.size());
  std::size_t dim = 0;
  for (const auto& v : a) dim = std::max(dim, v.size());
  for (const auto& v : b) dim = std::max(dim, v.size());
  for (const auto& v : a)
    if (v.size() != dim) throw DataError("embedding dimensions differ");
  for (const auto& v : b)
    if (v.size() != dim) throw DataError("embedding dimensions differ");

  for (int i = 0; i < m.rows; ++i) {
    const float* x = a[static_cast<std::size_t>(i)].data();
    for (int j = 0; j < m.cols; ++j) {
      const float* y = b[static_cast<std::size_t>(j)].data();
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        dot += static_cast<double>(x[k]) * static_cast<double>(y[k]);
      if (dot > 1.0) dot = 1.0;
      if (dot < -1.0) dot = -1.0;
      m.at(i, j) = static_cast<float>(dot);
    }
  }
  return m;
}

// Fraction of rows whose unique best column is the diagonal.  Ties go to
// the smallest column index, so a tie at the true index only counts when
// that index is the smallest tied one.
inline double matching_accuracy(const std::vector<EmbeddingVector>& src,
                                const std::vector<EmbeddingVector>& tgt) {
  if (src.empty()) throw DataError("matching_accuracy needs at least one row");
  if (src.size() != tgt.size())
    throw DataError("matching_accuracy needs equal-sized lists");
  const SimMatrix sim = similarity_matrix(src, tgt);
  std::uint64_t hits = 0;
  for (int i = 0; i < sim.rows; ++i) {
    int best = 0;
    for (int j = 1; j < sim.cols; ++j)
      if (sim.at(i, j) > sim.at(i, best)) best = j;
    if (best == i) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(sim.rows);
}

}  // namespace rupkit
