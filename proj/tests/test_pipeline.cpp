#include <doctest.h>

#include <algorithm>
#include <map>

#include "subtok/pipeline.hpp"
#include "testutil.hpp"

using namespace subtok;
using namespace subtok::pipeline;

namespace {

// 100-line synthetic parallel corpus.
void write_toy_corpus(const testutil::TempDir& dir, int lines = 100, std::uint64_t seed = 7) {
  testutil::SplitMix64 gen(seed);
  std::vector<std::string> src, tgt;
  for (int i = 0; i < lines; ++i) {
    src.push_back(testutil::random_sentence(gen));
    tgt.push_back(testutil::random_sentence(gen));
  }
  corpus::write_lines(dir.file("src.txt"), src);
  corpus::write_lines(dir.file("tgt.txt"), tgt);
}

std::string toy_config(const testutil::TempDir& dir, const std::string& out_name,
                       const std::string& src_scheme = "bpe",
                       const std::string& tgt_scheme = "morpheme") {
  std::string src_tok = src_scheme == "bpe"
                            ? R"({"scheme":"bpe","num_merges":50,"min_pair_frequency":0})"
                            : "{\"scheme\":\"" + src_scheme + "\"}";
  std::string tgt_tok = tgt_scheme == "bpe"
                            ? R"({"scheme":"bpe","num_merges":50,"min_pair_frequency":0})"
                            : "{\"scheme\":\"" + tgt_scheme + "\"}";
  return std::string("{\n") +
         "  \"source\": \"" + dir.file("src.txt") + "\",\n" +
         "  \"target\": \"" + dir.file("tgt.txt") + "\",\n" +
         "  \"out_dir\": \"" + dir.file(out_name) + "\",\n" +
         "  \"seed\": 42,\n" +
         "  \"split\": {\"ratio\": \"98:1:1\"},\n" +
         "  \"source_tokenizer\": " + src_tok + ",\n" +
         "  \"target_tokenizer\": " + tgt_tok + "\n" +
         "}\n";
}

std::map<std::string, std::string> snapshot(const RunManifest& manifest,
                                            const std::string& out_dir) {
  std::map<std::string, std::string> bytes;
  for (const std::string& name : manifest.outputs)
    bytes[name] = testutil::slurp(out_dir + "/" + name);
  return bytes;
}

}  // namespace

TEST_CASE("pipeline emits the expected files for (bpe, morpheme)") {
  testutil::TempDir dir("pipe1");
  write_toy_corpus(dir);
  PipelineConfig cfg = PipelineConfig::from_json(toy_config(dir, "out"));
  RunManifest manifest = run_pipeline(cfg);

  // 6 token files, one merge table, one manifest.
  CHECK(manifest.outputs.size() == 8);
  std::vector<std::string> sorted = manifest.outputs;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::string>{"manifest.txt", "src.merges", "test.src.tok",
                                           "test.tgt.tok", "train.src.tok", "train.tgt.tok",
                                           "valid.src.tok", "valid.tgt.tok"});
  CHECK(manifest.sizes == corpus::SplitSizes{98, 1, 1});

  // Emitted line counts match the split.
  CHECK(corpus::read_lines_file(dir.file("out/train.src.tok")).size() == 98);
  CHECK(corpus::read_lines_file(dir.file("out/valid.src.tok")).size() == 1);
  CHECK(corpus::read_lines_file(dir.file("out/test.tgt.tok")).size() == 1);

  const std::string m = manifest.text;
  CHECK(m.find("#manifest v1") == 0);
  CHECK(m.find("seed = 42") != std::string::npos);
  CHECK(m.find("split_sizes = 98 1 1") != std::string::npos);
  CHECK(m.find("generator = splitmix64-fisheryates-v1") != std::string::npos);
  CHECK(m.find("stage = learn_bpe src") != std::string::npos);
  CHECK(m.find("config_sha256 = ") != std::string::npos);
}

TEST_CASE("pipeline with (alphabet, alphabet) emits no merge table") {
  testutil::TempDir dir("pipe2");
  write_toy_corpus(dir);
  PipelineConfig cfg = PipelineConfig::from_json(toy_config(dir, "out", "alphabet", "alphabet"));
  RunManifest manifest = run_pipeline(cfg);
  CHECK(manifest.outputs.size() == 7);
  for (const std::string& name : manifest.outputs) CHECK(name.find(".merges") == std::string::npos);
}

TEST_CASE("pipeline reruns are byte-identical") {
  testutil::TempDir dir("pipe3");
  write_toy_corpus(dir);
  PipelineConfig cfg = PipelineConfig::from_json(toy_config(dir, "out"));

  RunManifest first = run_pipeline(cfg);
  auto before = snapshot(first, dir.file("out"));
  RunManifest second = run_pipeline(cfg);
  auto after = snapshot(second, dir.file("out"));
  CHECK(before == after);
}

TEST_CASE("BPE merges are learned from the training split only") {
  testutil::TempDir dir("pipe4");
  write_toy_corpus(dir);
  PipelineConfig cfg = PipelineConfig::from_json(toy_config(dir, "out"));
  run_pipeline(cfg);
  std::string merges_before = testutil::slurp(dir.file("out/src.merges"));

  // Perturb exactly the source lines that land in the test split.
  corpus::SplitIndices idx = corpus::split_corpus(100, cfg.split);
  std::vector<std::string> src = corpus::read_lines_file(dir.file("src.txt"));
  for (std::int64_t i : idx.test) src[static_cast<std::size_t>(i)] = "zz qq zz qq";
  corpus::write_lines(dir.file("src.txt"), src);

  run_pipeline(cfg);
  CHECK(testutil::slurp(dir.file("out/src.merges")) == merges_before);
}

TEST_CASE("pipeline config validation") {
  CHECK_THROWS_AS(PipelineConfig::from_json("not json"), FormatError);
  CHECK_THROWS_AS(PipelineConfig::from_json("{}"), BadSpec);
  CHECK_THROWS_AS(PipelineConfig::from_json(
                      R"({"source":"a","target":"b","out_dir":"o",
                          "source_tokenizer":{"scheme":"nope"},
                          "target_tokenizer":{"scheme":"bpe"}})"),
                  BadSpec);
}

TEST_CASE("pipeline over TSV input") {
  testutil::TempDir dir("pipe5");
  testutil::SplitMix64 gen(11);
  std::vector<std::string> rows;
  for (int i = 0; i < 20; ++i)
    rows.push_back(testutil::random_sentence(gen) + "\t" + testutil::random_sentence(gen));
  corpus::write_lines(dir.file("c.tsv"), rows);

  std::string cfg_text = std::string("{\n") +
                         "  \"tsv\": \"" + dir.file("c.tsv") + "\",\n" +
                         "  \"out_dir\": \"" + dir.file("out") + "\",\n" +
                         "  \"seed\": 1,\n" +
                         "  \"split\": {\"counts\": \"18,1,1\"},\n" +
                         "  \"source_tokenizer\": {\"scheme\": \"alphabet\"},\n" +
                         "  \"target_tokenizer\": {\"scheme\": \"morpheme\", \"segmenter\": \"rule\"}\n" +
                         "}\n";
  RunManifest manifest = run_pipeline(PipelineConfig::from_json(cfg_text));
  CHECK(manifest.sizes == corpus::SplitSizes{18, 1, 1});
  CHECK(corpus::read_lines_file(dir.file("out/train.tgt.tok")).size() == 18);
}
