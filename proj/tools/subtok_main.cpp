// subtok: tokenization lab for Korean-English MT preprocessing.
//
// Subcommands cover the full workflow: tokenize / detokenize (alphabet,
// morpheme, bpe), learn-bpe, split, bleu, stats, pipeline. Data goes to the
// output stream only, diagnostics to stderr only. Exit codes: 0 success,
// 1 data error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subtok/bleu.hpp"
#include "subtok/bpe.hpp"
#include "subtok/corpus.hpp"
#include "subtok/line_tokenizer.hpp"
#include "subtok/pipeline.hpp"
#include "subtok/utf8.hpp"

namespace {

using namespace subtok;

constexpr std::size_t kChunkLines = 65536;

std::uint64_t env_default_seed() {
  if (const char* env = std::getenv("SUBTOK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw BadSpec(std::string("SUBTOK_SEED is not a number: ") + env);
    }
  }
  return 0;
}

// '-' binds a stream to stdin/stdout.
class Input {
public:
  explicit Input(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot open: " + path);
    }
  }
  std::istream& stream() { return file_.is_open() ? file_ : std::cin; }

private:
  std::ifstream file_;
};

class Output {
public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot open for writing: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw Error("write failed");
  }

private:
  std::ofstream file_;
};

bool read_chunk(std::istream& in, std::vector<std::string>& chunk) {
  chunk.clear();
  std::string line;
  while (chunk.size() < kChunkLines && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    chunk.push_back(line);
  }
  return !chunk.empty();
}

struct SchemeFlags {
  std::string scheme;
  std::string segmenter = "rule";
  std::string merges_path;
  std::string marker = "▁";
  std::string on_marker = "reject";
  bool pretok = false;

  void add_to(CLI::App* cmd, bool for_tokenize) {
    cmd->add_option("--scheme", scheme, "Tokenization scheme")
        ->required()
        ->check(CLI::IsMember({"alphabet", "morpheme", "bpe"}));
    if (for_tokenize) {
      cmd->add_option("--segmenter", segmenter,
                      "Morpheme segmenter: 'rule' or 'exec:<command>' (line protocol)");
      cmd->add_option("--merges", merges_path, "Merge table file (bpe)");
    }
    cmd->add_option("--marker", marker, "Space marker character (alphabet/morpheme)");
    cmd->add_flag("--pretok", pretok, "Punctuation-separating BPE mode (lossy detokenization)");
    if (for_tokenize) {
      cmd->add_option("--on-marker", on_marker,
                      "Input already contains the marker: reject or escape")
          ->check(CLI::IsMember({"reject", "escape"}));
    }
  }

  MarkerConfig marker_config() const {
    MarkerConfig cfg;
    auto cps = utf8::decode(marker);
    if (cps.size() != 1) throw BadSpec("--marker must be a single character");
    cfg.space_marker = cps[0];
    cfg.strictness = on_marker == "escape" ? MarkerStrictness::Escape : MarkerStrictness::Reject;
    return cfg;
  }

  LineTokenizer build(bool for_tokenize) const {
    Scheme s = scheme_from_name(scheme);
    switch (s) {
      case Scheme::Alphabet:
        return LineTokenizer::alphabet(marker_config());
      case Scheme::Morpheme:
        return LineTokenizer::morpheme(marker_config(), make_segmenter(segmenter));
      case Scheme::Bpe: {
        bpe::BpeConfig cfg;
        cfg.pretokenize = pretok;
        bpe::MergeTable table;
        if (for_tokenize) {
          if (merges_path.empty()) throw BadSpec("--scheme bpe requires --merges <file>");
          table = bpe::load_merges(merges_path);
        }
        return LineTokenizer::bpe(bpe::MergeRanks(table), cfg, marker_config());
      }
    }
    throw Error("unreachable scheme");
  }
};

int cmd_tokenize(const SchemeFlags& flags, const std::string& in_path,
                 const std::string& out_path) {
  LineTokenizer tok = flags.build(/*for_tokenize=*/true);
  Input in(in_path);
  Output out(out_path);
  std::vector<std::string> chunk;
  std::size_t offset = 0;
  while (read_chunk(in.stream(), chunk)) {
    std::vector<std::string> done;
    try {
      done = tokenize_lines(chunk, tok);
    } catch (const FormatError& e) {
      // Chunk-relative line number to absolute.
      throw FormatError(e.message(), offset + e.line());
    }
    for (const std::string& line : done) out.stream() << line << '\n';
    offset += chunk.size();
  }
  out.finish();
  return 0;
}

int cmd_detokenize(const SchemeFlags& flags, const std::string& in_path,
                   const std::string& out_path) {
  LineTokenizer tok = flags.build(/*for_tokenize=*/false);
  Input in(in_path);
  Output out(out_path);
  std::vector<std::string> chunk;
  std::size_t offset = 0;
  while (read_chunk(in.stream(), chunk)) {
    std::vector<std::size_t> warned;
    std::vector<std::string> done = detokenize_lines(chunk, tok, &warned);
    for (std::size_t line_no : warned) {
      std::cerr << "subtok: warning: line " << offset + line_no
                << ": stripped trailing continuation marker\n";
    }
    for (const std::string& line : done) out.stream() << line << '\n';
    offset += chunk.size();
  }
  out.finish();
  return 0;
}

int cmd_learn_bpe(const std::string& in_path, const std::string& merges_out,
                  std::int64_t num_merges, std::int64_t min_freq, bool pretok) {
  Input in(in_path);
  std::vector<std::string> lines = corpus::read_lines(in.stream());
  bpe::BpeConfig cfg;
  cfg.num_merges = num_merges;
  cfg.min_pair_frequency = min_freq;
  cfg.pretokenize = pretok;
  bpe::MergeTable table = bpe::learn_bpe(bpe::count_words(lines, pretok), cfg);
  std::cerr << "subtok: learned " << table.size() << " merges from " << lines.size()
            << " lines\n";
  if (merges_out == "-") {
    std::cout << bpe::serialize_merges(table);
    std::cout.flush();
  } else {
    bpe::save_merges(table, merges_out);
  }
  return 0;
}

int cmd_split(const std::string& src, const std::string& tgt, const std::string& tsv,
              const std::string& out_prefix, const std::string& ratio,
              const std::string& counts, std::uint64_t seed) {
  if (!tsv.empty() && (!src.empty() || !tgt.empty()))
    throw BadSpec("--tsv excludes --src/--tgt");
  if (tsv.empty() && (src.empty() || tgt.empty()))
    throw BadSpec("provide either --src and --tgt, or --tsv");
  if (!ratio.empty() && !counts.empty()) throw BadSpec("--ratio and --counts are exclusive");

  corpus::SplitSpec spec =
      !counts.empty() ? corpus::SplitSpec::from_counts_string(counts, seed)
                      : corpus::SplitSpec::from_ratio_string(ratio.empty() ? "98:1:1" : ratio, seed);

  corpus::ParallelCorpus pc =
      tsv.empty() ? corpus::read_parallel(src, tgt) : corpus::read_parallel_tsv(tsv);
  corpus::SplitIndices idx = corpus::split_corpus(pc.size(), spec);

  auto emit = [&](const char* part, const std::vector<std::int64_t>& which) {
    std::vector<std::string> s, t;
    s.reserve(which.size());
    t.reserve(which.size());
    for (std::int64_t i : which) {
      s.push_back(pc.source[static_cast<std::size_t>(i)]);
      t.push_back(pc.target[static_cast<std::size_t>(i)]);
    }
    corpus::write_lines(out_prefix + "." + part + ".src", s);
    corpus::write_lines(out_prefix + "." + part + ".tgt", t);
  };
  emit("train", idx.train);
  emit("valid", idx.valid);
  emit("test", idx.test);
  std::cerr << "subtok: split " << pc.size() << " pairs into " << idx.train.size() << "/"
            << idx.valid.size() << "/" << idx.test.size() << " (seed " << seed << ")\n";
  return 0;
}

// Tokens that still look tokenized: continuation-marked or space-marked.
bool looks_tokenized(const std::vector<std::string>& lines) {
  for (const std::string& line : lines) {
    if (line.find("@@ ") != std::string::npos || line.find("▁") != std::string::npos)
      return true;
    if (line.size() >= 2 && line.compare(line.size() - 2, 2, "@@") == 0) return true;
  }
  return false;
}

int cmd_bleu(const std::string& hyp_path, const std::vector<std::string>& ref_paths,
             const std::string& smoothing, double epsilon, bool raw_tokens, bool pretty) {
  Input hyp_in(hyp_path);
  std::vector<std::string> hyp_lines = corpus::read_lines(hyp_in.stream());
  std::vector<std::vector<std::string>> ref_lines;
  for (const std::string& path : ref_paths) {
    Input ref_in(path);
    ref_lines.push_back(corpus::read_lines(ref_in.stream()));
    if (ref_lines.back().size() != hyp_lines.size()) {
      throw LengthMismatch(path + " has " + std::to_string(ref_lines.back().size()) +
                           " lines but " + hyp_path + " has " + std::to_string(hyp_lines.size()));
    }
  }

  if (!raw_tokens) {
    if (looks_tokenized(hyp_lines)) {
      std::cerr << "subtok: warning: hypothesis looks tokenized (markers present); "
                   "detokenize before scoring or pass --raw-tokens\n";
    }
  }

  std::vector<bleu::Tokens> hyps = bleu::tokenize_lines(hyp_lines);
  std::vector<std::vector<bleu::Tokens>> refs(hyp_lines.size());
  for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
    for (const auto& one_ref : ref_lines) refs[i].push_back(bleu::tokenize_lines({one_ref[i]})[0]);
  }

  bleu::Smoothing smooth = smoothing == "add-eps" ? bleu::Smoothing::add_epsilon(epsilon)
                                                  : bleu::Smoothing::none();
  bleu::BleuReport report = bleu::bleu_corpus(hyps, refs, smooth);
  if (pretty) std::cout << report.pretty();
  std::cout << report.machine_line() << '\n';
  std::cout.flush();
  return 0;
}

int cmd_stats(const std::string& in_path, std::int64_t top, bool summary_only) {
  Input in(in_path);
  corpus::VocabReport report = corpus::vocab_stats(corpus::read_lines(in.stream()));
  std::cout << "unique=" << report.unique_tokens << " total=" << report.total_tokens << '\n';
  if (!summary_only) {
    std::int64_t limit = top > 0 ? std::min<std::int64_t>(top, report.frequencies.size())
                                 : static_cast<std::int64_t>(report.frequencies.size());
    for (std::int64_t i = 0; i < limit; ++i) {
      std::cout << report.frequencies[static_cast<std::size_t>(i)].first << '\t'
                << report.frequencies[static_cast<std::size_t>(i)].second << '\n';
    }
  }
  std::cout.flush();
  return 0;
}

int cmd_pipeline(const std::string& config_path) {
  pipeline::PipelineConfig cfg = pipeline::PipelineConfig::from_json_file(config_path);
  pipeline::RunManifest manifest = pipeline::run_pipeline(cfg);
  std::cout << manifest.text;
  std::cout.flush();
  std::cerr << "subtok: wrote " << manifest.outputs.size() << " files under " << cfg.out_dir
            << '\n';
  return 0;
}

}  // namespace

int run_app(int argc, char** argv) {
  CLI::App app{"Korean-English MT tokenization lab"};
  app.require_subcommand(1);

  SchemeFlags tok_flags;
  std::string tok_in = "-", tok_out = "-";
  auto* tok = app.add_subcommand("tokenize", "Tokenize one sentence per line");
  tok_flags.add_to(tok, /*for_tokenize=*/true);
  tok->add_option("input", tok_in, "Input file or '-'");
  tok->add_option("output", tok_out, "Output file or '-'");

  SchemeFlags detok_flags;
  std::string detok_in = "-", detok_out = "-";
  auto* detok = app.add_subcommand("detokenize", "Invert tokenize line-wise");
  detok_flags.add_to(detok, /*for_tokenize=*/false);
  detok->add_option("input", detok_in, "Input token file or '-'");
  detok->add_option("output", detok_out, "Output file or '-'");

  std::string learn_in = "-", learn_out;
  std::int64_t learn_merges = 32000, learn_min_freq = 2;
  bool learn_pretok = false;
  auto* learn = app.add_subcommand("learn-bpe", "Learn a BPE merge table from a corpus");
  learn->add_option("input", learn_in, "Training text or '-'");
  learn->add_option("merges_out", learn_out, "Merge table output file or '-'")->required();
  learn->add_option("--merges", learn_merges, "Number of merges to learn")
      ->check(CLI::NonNegativeNumber);
  learn->add_option("--min-freq", learn_min_freq, "Stop below this pair frequency")
      ->check(CLI::NonNegativeNumber);
  learn->add_flag("--pretok", learn_pretok, "Apply rule segmentation before counting");

  std::string split_src, split_tgt, split_tsv, split_out, split_ratio, split_counts;
  std::uint64_t split_seed = env_default_seed();
  auto* split = app.add_subcommand("split", "Seeded train/valid/test split of a parallel corpus");
  split->add_option("--src", split_src, "Source-side file");
  split->add_option("--tgt", split_tgt, "Target-side file");
  split->add_option("--tsv", split_tsv, "Single source<TAB>target file");
  split->add_option("--out", split_out, "Output prefix (six files)")->required();
  split->add_option("--ratio", split_ratio, "train:valid:test ratio, e.g. 98:1:1");
  split->add_option("--counts", split_counts, "Explicit train,valid,test counts");
  split->add_option("--seed", split_seed, "Shuffle seed (default $SUBTOK_SEED or 0)");

  std::string bleu_hyp;
  std::vector<std::string> bleu_refs;
  std::string bleu_smoothing = "none";
  double bleu_eps = 0.1;
  bool bleu_raw = false, bleu_pretty = false;
  auto* bleu_cmd = app.add_subcommand("bleu", "Corpus BLEU of hypothesis vs reference(s)");
  bleu_cmd->add_option("hypothesis", bleu_hyp, "Hypothesis file or '-'")->required();
  bleu_cmd->add_option("references", bleu_refs, "Reference file(s)")->required();
  bleu_cmd->add_option("--smoothing", bleu_smoothing, "none or add-eps")
      ->check(CLI::IsMember({"none", "add-eps"}));
  bleu_cmd->add_option("--epsilon", bleu_eps, "Epsilon for add-eps smoothing");
  bleu_cmd->add_flag("--raw-tokens", bleu_raw, "Score token streams without the hygiene warning");
  bleu_cmd->add_flag("--pretty", bleu_pretty, "Also print a human-readable report");

  std::string stats_in = "-";
  std::int64_t stats_top = 0;
  bool stats_summary = false;
  auto* stats = app.add_subcommand("stats", "Vocabulary statistics of a token file");
  stats->add_option("input", stats_in, "Token file or '-'");
  stats->add_option("--top", stats_top, "Print only the most frequent K tokens");
  stats->add_flag("--summary", stats_summary, "Print only the summary line");

  std::string pipe_config;
  auto* pipe = app.add_subcommand("pipeline", "Run split+learn+tokenize from a JSON config");
  pipe->add_option("config", pipe_config, "Pipeline config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (tok->parsed()) return cmd_tokenize(tok_flags, tok_in, tok_out);
  if (detok->parsed()) return cmd_detokenize(detok_flags, detok_in, detok_out);
  if (learn->parsed())
    return cmd_learn_bpe(learn_in, learn_out, learn_merges, learn_min_freq, learn_pretok);
  if (split->parsed())
    return cmd_split(split_src, split_tgt, split_tsv, split_out, split_ratio, split_counts,
                     split_seed);
  if (bleu_cmd->parsed())
    return cmd_bleu(bleu_hyp, bleu_refs, bleu_smoothing, bleu_eps, bleu_raw, bleu_pretty);
  if (stats->parsed()) return cmd_stats(stats_in, stats_top, stats_summary);
  if (pipe->parsed()) return cmd_pipeline(pipe_config);
  return 0;
}

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    return run_app(argc, argv);
  } catch (const BadSpec& e) {
    std::cerr << "subtok: usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "subtok: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "subtok: error: " << e.what() << '\n';
    return 1;
  }
}
