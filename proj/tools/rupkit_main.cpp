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

// Command line front end.  One subcommand per pipeline operation; primary
// results go to stdout or --out, single-line JSON reports go to stderr.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 transport error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <rupkit/rupkit.hpp>

namespace {

using nlohmann::json;

std::vector<std::string> read_lines_stream(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> read_lines(const std::string& path) {
  if (path.empty() || path == "-") return read_lines_stream(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rupkit::DataError("cannot open file: " + path);
  return read_lines_stream(in);
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rupkit::DataError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through to stdout unless --out was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw rupkit::DataError("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void report(const json& j) { std::cerr << j.dump() << "\n"; }

std::string file_stem(const std::string& path) {
  const auto stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? path : stem;
}

// Non-empty lines only; used where an empty entry is meaningless (titles,
// sentence-per-line documents).
std::vector<std::string> read_content_lines(const std::string& path) {
  auto lines = read_lines(path);
  std::erase_if(lines, [](const std::string& s) { return s.empty(); });
  return lines;
}

struct ProviderOpts {
  std::string provider = "mock";
  int batch_size = 32;
  int timeout_ms = 5000;
  int retries = 0;
  int mock_dim = 32;
};

void add_provider_opts(CLI::App* cmd, ProviderOpts& po) {
  cmd->add_option("--provider", po.provider,
                  "Embedding provider: mock, file:<jsonl>, or an http(s) "
                  "endpoint URL")
      ->capture_default_str();
  cmd->add_option("--batch-size", po.batch_size, "Texts per embedding request")
      ->capture_default_str();
  cmd->add_option("--timeout-ms", po.timeout_ms, "HTTP timeout per request")
      ->capture_default_str();
  cmd->add_option("--retries", po.retries, "HTTP retries after a failure")
      ->capture_default_str();
  cmd->add_option("--mock-dim", po.mock_dim, "Mock embedding dimension")
      ->capture_default_str();
}

rupkit::ProviderConfig make_provider(const ProviderOpts& po, int max_in_flight) {
  rupkit::ProviderConfig cfg;
  cfg.batch_size = po.batch_size;
  cfg.timeout_ms = po.timeout_ms;
  cfg.retries = po.retries;
  cfg.mock_dim = po.mock_dim;
  cfg.max_in_flight = max_in_flight < 1 ? 1 : max_in_flight;
  if (po.provider == "mock") {
    cfg.kind = rupkit::ProviderKind::mock;
  } else if (po.provider.rfind("file:", 0) == 0) {
    cfg.kind = rupkit::ProviderKind::file;
    cfg.file_path = po.provider.substr(5);
  } else if (po.provider.rfind("http://", 0) == 0 ||
             po.provider.rfind("https://", 0) == 0) {
    cfg.kind = rupkit::ProviderKind::http;
    cfg.endpoint = po.provider;
  } else {
    throw rupkit::DataError("unknown provider '" + po.provider +
                            "' (expected mock, file:<path>, or http(s) URL)");
  }
  return cfg;
}

// Extracts the text column to run a text-level command on.  Accepts either
// a JSON-lines corpus (field picked by --field) or a plain text file with
// one entry per line; the first non-blank byte decides.
std::vector<std::string> read_texts(const std::string& path,
                                    const std::string& field) {
  const auto lines = read_lines(path);
  bool looks_jsonl = false;
  for (const auto& line : lines) {
    const auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    looks_jsonl = line[pos] == '{';
    break;
  }
  if (!looks_jsonl) return lines;

  std::ostringstream joined;
  for (const auto& line : lines) joined << line << "\n";
  std::istringstream in(joined.str());
  const auto corpus = rupkit::read_corpus(in);
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& pair : corpus) {
    if (field == "rup") {
      texts.push_back(pair.rup);
    } else if (field == "ron") {
      texts.push_back(pair.ron);
    } else if (pair.eng) {
      texts.push_back(*pair.eng);
    }
  }
  return texts;
}

int run_align(const std::string& src_path, const std::string& tgt_path,
              const ProviderOpts& po, double min_sim, double penalty,
              bool split_raw, const std::string& source,
              const std::string& genre, const std::string& out_path,
              int jobs) {
  rupkit::DocumentPair doc;
  doc.src_id = file_stem(src_path);
  doc.tgt_id = file_stem(tgt_path);
  if (split_raw) {
    doc.src_sentences = rupkit::split_sentences(read_all(src_path), {});
    doc.tgt_sentences = rupkit::split_sentences(read_all(tgt_path), {});
  } else {
    doc.src_sentences = read_content_lines(src_path);
    doc.tgt_sentences = read_content_lines(tgt_path);
  }

  rupkit::AlignConfig cfg;
  cfg.min_sim = min_sim;
  cfg.match_penalty = penalty;
  rupkit::AlignMeta meta;
  meta.source = source.empty() ? doc.src_id : source;
  meta.genre = genre;

  rupkit::AlignReport rep;
  const auto pairs = rupkit::align_documents(doc, cfg, make_provider(po, jobs),
                                             &rep, meta);
  Output out(out_path);
  rupkit::write_corpus(pairs, out.stream());
  report(json{{"src_total", rep.src_total},
              {"tgt_total", rep.tgt_total},
              {"matched", rep.matched},
              {"skipped_src", rep.skipped_src},
              {"skipped_tgt", rep.skipped_tgt},
              {"score", rep.score}});
  return 0;
}

int run_match_docs(const std::string& a_path, const std::string& b_path,
                   const ProviderOpts& po, double threshold,
                   const std::string& out_path, int jobs) {
  const auto titles_a = read_content_lines(a_path);
  const auto titles_b = read_content_lines(b_path);
  if (titles_a.empty() || titles_b.empty())
    throw rupkit::DataError("title files must be non-empty");
  const auto pairs = rupkit::match_documents(titles_a, titles_b, threshold,
                                             make_provider(po, jobs));
  Output out(out_path);
  for (const auto& [ia, ib] : pairs)
    out.stream() << ia << "\t" << ib << "\n";
  report(json{{"a", titles_a.size()},
              {"b", titles_b.size()},
              {"pairs", pairs.size()}});
  return 0;
}

int run_pair_verses(const std::string& a_path, const std::string& b_path,
                    const std::string& out_path) {
  const auto rows_a = read_lines(a_path);
  const auto rows_b = read_lines(b_path);
  if (rows_a.size() != rows_b.size()) {
    throw rupkit::DataError("verse files have different row counts: " +
                            std::to_string(rows_a.size()) + " vs " +
                            std::to_string(rows_b.size()));
  }
  auto parse_row = [](const std::string& row, std::size_t index) {
    const auto tab = row.find('\t');
    if (tab == std::string::npos)
      return std::pair<std::string, std::string>(std::to_string(index + 1),
                                                 row);
    return std::pair<std::string, std::string>(row.substr(0, tab),
                                               row.substr(tab + 1));
  };

  Output out(out_path);
  std::size_t paired = 0, dropped = 0, sentences = 0;
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    const auto [id_a, text_a] = parse_row(rows_a[i], i);
    const auto [id_b, text_b] = parse_row(rows_b[i], i);
    (void)id_b;
    const auto verse = rupkit::pair_verses(text_a, text_b, {});
    if (!verse) {
      ++dropped;
      continue;
    }
    ++paired;
    for (std::size_t k = 0; k < verse->size(); ++k) {
      out.stream() << id_a << "\t" << k << "\t" << (*verse)[k].first << "\t"
                   << (*verse)[k].second << "\n";
      ++sentences;
    }
  }
  report(json{{"verses", rows_a.size()},
              {"paired", paired},
              {"dropped", dropped},
              {"pairs", sentences}});
  return 0;
}

int run_convert(const std::string& to, const std::string& model_path,
                const std::string& in_path, const std::string& out_path) {
  const auto lines = read_lines(in_path);
  Output out(out_path);
  if (to == "cunia") {
    rupkit::MappingTable table = rupkit::MappingTable::standard();
    if (!model_path.empty())
      table = rupkit::load_ortho_model(model_path).mapping;
    for (const auto& line : lines)
      out.stream() << rupkit::normalize_to_cunia(line, table) << "\n";
  } else {
    const auto model = rupkit::load_ortho_model(model_path);
    for (const auto& line : lines)
      out.stream() << rupkit::convert_to_diaro(line, model) << "\n";
  }
  report(json{{"lines", lines.size()}});
  return 0;
}

int run_train_ortho(const std::string& in_path, const std::string& out_path) {
  const auto lines = read_lines(in_path);
  const auto model = rupkit::train_ortho_model(lines);
  std::uint64_t sites = 0;
  for (const auto& [ctx, counts] : model.fourgram)
    sites += counts.close + counts.mid;
  rupkit::save_ortho_model(model, out_path);
  report(json{{"lines", lines.size()},
              {"sites", sites},
              {"word_keys", model.word_dict.size()},
              {"contexts", model.fourgram.size()}});
  return 0;
}

int run_eval_ortho(const std::string& model_path,
                   const std::string& held_out_path,
                   const std::string& out_path) {
  const auto model = rupkit::load_ortho_model(model_path);
  const auto lines = read_lines(held_out_path);
  const double accuracy = rupkit::evaluate_converter(lines, model);
  const auto classes = rupkit::count_site_classes(lines);
  const double baseline =
      static_cast<double>(classes.mid) /
      static_cast<double>(classes.close + classes.mid);
  Output out(out_path);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", accuracy);
  out.stream() << buf << "\n";
  report(json{{"accuracy", accuracy},
              {"baseline", baseline},
              {"close", classes.close},
              {"mid", classes.mid}});
  return 0;
}

int run_chrf(const std::string& hyp_path, const std::string& ref_path,
             int word_order, const std::string& out_path) {
  const auto hyps = read_lines(hyp_path);
  const auto refs = read_lines(ref_path);
  rupkit::ChrfConfig cfg;
  cfg.word_order = word_order;
  const double score = rupkit::chrf(hyps, refs, cfg);
  Output out(out_path);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", score);
  out.stream() << buf << "\n";
  report(json{{"score", score},
              {"pairs", hyps.size()},
              {"char_order", cfg.char_order},
              {"word_order", cfg.word_order}});
  return 0;
}

int run_bleu(const std::string& hyp_path, const std::string& ref_path,
             const std::string& out_path) {
  const auto hyps = read_lines(hyp_path);
  const auto refs = read_lines(ref_path);
  const double score = rupkit::bleu(hyps, refs, {});
  Output out(out_path);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", score);
  out.stream() << buf << "\n";
  report(json{{"score", score}, {"pairs", hyps.size()}});
  return 0;
}

int run_fertility(const std::string& vocab_path, const std::string& in_path,
                  const std::string& field, const std::string& out_path) {
  const auto vocab = rupkit::load_vocab(vocab_path);
  const auto texts = read_texts(in_path, field);
  const double fertility = rupkit::tokenizer_fertility(texts, vocab);
  Output out(out_path);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", fertility);
  out.stream() << buf << "\n";
  report(json{{"fertility", fertility}, {"lines", texts.size()}});
  return 0;
}

int run_stats(const std::string& in_path, const std::string& field,
              bool split_sentences, const std::string& out_path) {
  const auto texts = read_texts(in_path, field);
  const auto stats = rupkit::corpus_stats(texts, split_sentences, {});
  Output out(out_path);
  out.stream() << json{{"words", stats.words},
                       {"unique_words", stats.unique_words},
                       {"ttr", stats.ttr},
                       {"words_per_sentence", stats.words_per_sentence}}
                      .dump()
               << "\n";
  return 0;
}

int run_split(const std::string& in_path, const std::string& manifest_path,
              double ratio, std::uint64_t seed, const std::string& out_path) {
  const auto corpus = rupkit::read_corpus(in_path);
  rupkit::SplitPlan plan;
  plan.ratio = ratio;
  plan.seed = seed;
  plan.manifest = rupkit::read_manifest(manifest_path);
  const auto split = rupkit::stratified_split(corpus, plan);
  std::size_t train = 0, dev = 0, test = 0;
  for (const auto& pair : split) {
    if (pair.split == rupkit::Split::train) ++train;
    else if (pair.split == rupkit::Split::dev) ++dev;
    else ++test;
  }
  Output out(out_path);
  rupkit::write_corpus(split, out.stream());
  report(json{{"train", train}, {"dev", dev}, {"test", test}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rupkit: bitext mining and evaluation toolkit for the "
               "Aromanian corpus pipeline"};
  app.set_version_flag(
      "--version",
      std::string("rupkit ") + rupkit::kVersion + " (ortho-model format " +
          std::to_string(rupkit::kOrthoModelFormatVersion) + ")");
  app.set_config("--config", "",
                 "Key-value config file; command-line flags win");
  app.require_subcommand(1);

  int jobs = 1;
  app.add_option("--jobs", jobs, "Parallel batches where supported")
      ->capture_default_str();

  int exit_code = 0;

  // align
  {
    auto* cmd = app.add_subcommand(
        "align", "Align two documents into sentence pairs");
    auto src = std::make_shared<std::string>();
    auto tgt = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto source = std::make_shared<std::string>();
    auto genre = std::make_shared<std::string>();
    auto po = std::make_shared<ProviderOpts>();
    auto min_sim = std::make_shared<double>(0.5);
    auto penalty = std::make_shared<double>(0.3);
    auto split_raw = std::make_shared<bool>(false);
    cmd->add_option("--src", *src, "Source document")->required();
    cmd->add_option("--tgt", *tgt, "Target document")->required();
    cmd->add_option("--min-sim", *min_sim,
                    "Minimum similarity for a match")
        ->capture_default_str();
    cmd->add_option("--penalty", *penalty, "Per-match score penalty")
        ->capture_default_str();
    cmd->add_flag("--split-sentences", *split_raw,
                  "Treat inputs as raw text and split into sentences "
                  "(default: one sentence per line)");
    cmd->add_option("--source", *source, "Source label for emitted pairs");
    cmd->add_option("--genre", *genre, "Genre label for emitted pairs");
    cmd->add_option("--out", *out, "Output JSON-lines corpus (default stdout)");
    add_provider_opts(cmd, *po);
    cmd->callback([=, &exit_code, &jobs] {
      exit_code = run_align(*src, *tgt, *po, *min_sim, *penalty, *split_raw,
                            *source, *genre, *out, jobs);
    });
  }

  // match-docs
  {
    auto* cmd = app.add_subcommand(
        "match-docs", "Greedily match document titles by similarity");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto threshold = std::make_shared<double>(0.5);
    auto po = std::make_shared<ProviderOpts>();
    cmd->add_option("--a", *a, "First title list (one per line)")->required();
    cmd->add_option("--b", *b, "Second title list (one per line)")->required();
    cmd->add_option("--threshold", *threshold, "Minimum similarity")
        ->capture_default_str();
    cmd->add_option("--out", *out, "Output TSV of index pairs");
    add_provider_opts(cmd, *po);
    cmd->callback([=, &exit_code, &jobs] {
      exit_code = run_match_docs(*a, *b, *po, *threshold, *out, jobs);
    });
  }

  // pair-verses
  {
    auto* cmd = app.add_subcommand(
        "pair-verses",
        "Pair verse-aligned rows sentence by sentence when counts agree");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--a", *a, "First verse TSV (id<TAB>text)")->required();
    cmd->add_option("--b", *b, "Second verse TSV (id<TAB>text)")->required();
    cmd->add_option("--out", *out, "Output TSV (default stdout)");
    cmd->callback(
        [=, &exit_code] { exit_code = run_pair_verses(*a, *b, *out); });
  }

  // convert
  {
    auto* cmd = app.add_subcommand(
        "convert", "Convert text between the two orthography conventions");
    auto to = std::make_shared<std::string>();
    auto model = std::make_shared<std::string>();
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--to", *to, "Target convention")
        ->required()
        ->check(CLI::IsMember({"cunia", "diaro"}));
    cmd->add_option("--model", *model, "Disambiguation model file");
    cmd->add_option("--in", *in, "Input text (default stdin)");
    cmd->add_option("--out", *out, "Output text (default stdout)");
    cmd->callback([=, &exit_code] {
      if (*to == "diaro" && model->empty())
        throw CLI::ValidationError("--model is required with --to diaro");
      exit_code = run_convert(*to, *model, *in, *out);
    });
  }

  // train-ortho
  {
    auto* cmd = app.add_subcommand(
        "train-ortho", "Train the vowel disambiguation model");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--in", *in, "Training text, one line per entry")
        ->required();
    cmd->add_option("--out", *out, "Model output file")->required();
    cmd->callback(
        [=, &exit_code] { exit_code = run_train_ortho(*in, *out); });
  }

  // eval-ortho
  {
    auto* cmd = app.add_subcommand(
        "eval-ortho", "Score the converter on held-out text");
    auto model = std::make_shared<std::string>();
    auto held_out = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--model", *model, "Model file")->required();
    cmd->add_option("--held-out", *held_out, "Held-out text file")->required();
    cmd->add_option("--out", *out, "Accuracy output (default stdout)");
    cmd->callback([=, &exit_code] {
      exit_code = run_eval_ortho(*model, *held_out, *out);
    });
  }

  // chrf
  {
    auto* cmd = app.add_subcommand("chrf", "Character n-gram F-score");
    auto hyp = std::make_shared<std::string>();
    auto ref = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto word_order = std::make_shared<int>(0);
    cmd->add_option("--hyp", *hyp, "Hypothesis file, line aligned")
        ->required();
    cmd->add_option("--ref", *ref, "Reference file, line aligned")->required();
    cmd->add_option("--word-order", *word_order,
                    "Word n-gram order (2 for chrF++)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "Score output (default stdout)");
    cmd->callback([=, &exit_code] {
      exit_code = run_chrf(*hyp, *ref, *word_order, *out);
    });
  }

  // bleu
  {
    auto* cmd = app.add_subcommand("bleu", "Corpus BLEU (13a, exp smoothing)");
    auto hyp = std::make_shared<std::string>();
    auto ref = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--hyp", *hyp, "Hypothesis file, line aligned")
        ->required();
    cmd->add_option("--ref", *ref, "Reference file, line aligned")->required();
    cmd->add_option("--out", *out, "Score output (default stdout)");
    cmd->callback(
        [=, &exit_code] { exit_code = run_bleu(*hyp, *ref, *out); });
  }

  // fertility
  {
    auto* cmd = app.add_subcommand(
        "fertility", "Average subword tokens per word under a vocabulary");
    auto vocab = std::make_shared<std::string>();
    auto in = std::make_shared<std::string>();
    auto field = std::make_shared<std::string>("rup");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--vocab", *vocab, "Subword vocabulary, one per line")
        ->required();
    cmd->add_option("--in", *in, "Corpus (JSON-lines or plain text)")
        ->required();
    cmd->add_option("--field", *field, "Text field for JSON-lines input")
        ->check(CLI::IsMember({"rup", "ron", "eng"}))
        ->capture_default_str();
    cmd->add_option("--out", *out, "Score output (default stdout)");
    cmd->callback([=, &exit_code] {
      exit_code = run_fertility(*vocab, *in, *field, *out);
    });
  }

  // stats
  {
    auto* cmd = app.add_subcommand("stats", "Corpus statistics as JSON");
    auto in = std::make_shared<std::string>();
    auto field = std::make_shared<std::string>("rup");
    auto out = std::make_shared<std::string>();
    auto split = std::make_shared<bool>(false);
    cmd->add_option("--in", *in, "Corpus (JSON-lines or plain text)")
        ->required();
    cmd->add_option("--field", *field, "Text field for JSON-lines input")
        ->check(CLI::IsMember({"rup", "ron", "eng"}))
        ->capture_default_str();
    cmd->add_flag("--split-sentences", *split,
                  "Split each entry into sentences for the per-sentence "
                  "average");
    cmd->add_option("--out", *out, "Output (default stdout)");
    cmd->callback([=, &exit_code] {
      exit_code = run_stats(*in, *field, *split, *out);
    });
  }

  // split
  {
    auto* cmd = app.add_subcommand(
        "split", "Stratified train/dev/test split by source");
    auto in = std::make_shared<std::string>();
    auto manifest = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto ratio = std::make_shared<double>(0.95);
    auto seed = std::make_shared<std::uint64_t>(0);
    cmd->add_option("--in", *in, "Input JSON-lines corpus")->required();
    cmd->add_option("--manifest", *manifest, "Source manifest JSON")
        ->required();
    cmd->add_option("--ratio", *ratio, "Train fraction per trainable source")
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "Shuffle seed")->capture_default_str();
    cmd->add_option("--out", *out, "Output corpus (default stdout)");
    cmd->callback([=, &exit_code] {
      exit_code = run_split(*in, *manifest, *ratio, *seed, *out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    std::cerr << app.help();
    return 1;
  } catch (const rupkit::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return 3;
  } catch (const rupkit::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
