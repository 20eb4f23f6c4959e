#include "subtok/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subtok/line_tokenizer.hpp"
#include "subtok/sha256.hpp"
#include "subtok/shuffle.hpp"
#include "subtok/utf8.hpp"

namespace subtok::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

char32_t single_codepoint(const std::string& s, const char* what) {
  auto cps = utf8::decode(s);
  if (cps.size() != 1) throw BadSpec(std::string(what) + " must be a single character: " + s);
  return cps[0];
}

SideConfig parse_side(const json& j, const char* side) {
  SideConfig sc;
  if (!j.contains("scheme"))
    throw BadSpec(std::string("pipeline config: ") + side + " needs a \"scheme\"");
  sc.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (sc.scheme == Scheme::Morpheme && j.contains("segmenter"))
    sc.segmenter_spec = j.at("segmenter").get<std::string>();
  if (sc.scheme == Scheme::Bpe) {
    if (j.contains("num_merges")) sc.bpe.num_merges = j.at("num_merges").get<std::int64_t>();
    if (j.contains("min_pair_frequency"))
      sc.bpe.min_pair_frequency = j.at("min_pair_frequency").get<std::int64_t>();
    if (j.contains("pretokenize")) sc.bpe.pretokenize = j.at("pretokenize").get<bool>();
    if (j.contains("continuation_marker"))
      sc.bpe.continuation_marker = j.at("continuation_marker").get<std::string>();
  }
  return sc;
}

struct SideState {
  const char* tag;  // "src" / "tgt"
  const SideConfig* cfg;
  const std::vector<std::string>* lines;
  std::optional<bpe::MergeTable> merges;
};

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("pipeline config is not valid JSON: ") + e.what());
  }

  PipelineConfig cfg;
  cfg.config_text = json_text;
  if (j.contains("tsv")) {
    cfg.tsv_path = j.at("tsv").get<std::string>();
  } else {
    if (!j.contains("source") || !j.contains("target"))
      throw BadSpec("pipeline config needs \"source\" and \"target\" (or \"tsv\")");
    cfg.source_path = j.at("source").get<std::string>();
    cfg.target_path = j.at("target").get<std::string>();
  }
  if (!j.contains("out_dir")) throw BadSpec("pipeline config needs \"out_dir\"");
  cfg.out_dir = j.at("out_dir").get<std::string>();

  std::uint64_t seed = j.value("seed", std::uint64_t{0});
  if (j.contains("split")) {
    const json& s = j.at("split");
    if (s.contains("ratio"))
      cfg.split = corpus::SplitSpec::from_ratio_string(s.at("ratio").get<std::string>(), seed);
    else if (s.contains("counts"))
      cfg.split = corpus::SplitSpec::from_counts_string(s.at("counts").get<std::string>(), seed);
    else
      throw BadSpec("pipeline config: \"split\" needs \"ratio\" or \"counts\"");
  } else {
    cfg.split.seed = seed;
  }

  if (!j.contains("source_tokenizer") || !j.contains("target_tokenizer"))
    throw BadSpec("pipeline config needs \"source_tokenizer\" and \"target_tokenizer\"");
  cfg.source_side = parse_side(j.at("source_tokenizer"), "source_tokenizer");
  cfg.target_side = parse_side(j.at("target_tokenizer"), "target_tokenizer");

  if (j.contains("marker"))
    cfg.marker.space_marker = single_codepoint(j.at("marker").get<std::string>(), "marker");
  if (j.contains("marker_collision")) {
    std::string mode = j.at("marker_collision").get<std::string>();
    if (mode == "reject")
      cfg.marker.strictness = MarkerStrictness::Reject;
    else if (mode == "escape")
      cfg.marker.strictness = MarkerStrictness::Escape;
    else
      throw BadSpec("marker_collision must be \"reject\" or \"escape\"");
  }
  return cfg;
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
  std::ostringstream manifest;
  std::ostringstream stages;
  std::ostringstream outputs_block;
  RunManifest result;

  corpus::ParallelCorpus pc = cfg.tsv_path.empty()
                                  ? corpus::read_parallel(cfg.source_path, cfg.target_path)
                                  : corpus::read_parallel_tsv(cfg.tsv_path);
  stages << "stage = read_corpus\n";

  const std::int64_t n = pc.size();
  corpus::SplitIndices idx = corpus::split_corpus(n, cfg.split);
  result.sizes = corpus::split_sizes(n, cfg.split);
  stages << "stage = split\n";

  fs::create_directories(cfg.out_dir);
  auto out_path = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };

  auto gather = [](const std::vector<std::string>& lines, const std::vector<std::int64_t>& which) {
    std::vector<std::string> out;
    out.reserve(which.size());
    for (std::int64_t i : which) out.push_back(lines[static_cast<std::size_t>(i)]);
    return out;
  };

  SideState sides[2] = {{"src", &cfg.source_side, &pc.source, {}},
                        {"tgt", &cfg.target_side, &pc.target, {}}};

  auto emit = [&](const std::string& name, const std::vector<std::string>& lines,
                  bool with_vocab) {
    corpus::write_lines(out_path(name), lines);
    outputs_block << "output = " << name << " sha256=" << sha256_file_hex(out_path(name))
                  << " lines=" << lines.size();
    if (with_vocab) {
      corpus::VocabReport vr = corpus::vocab_stats(lines);
      outputs_block << " unique_tokens=" << vr.unique_tokens
                    << " total_tokens=" << vr.total_tokens;
    }
    outputs_block << "\n";
    result.outputs.push_back(name);
  };

  // BPE merge tables are learned from the training split only; validation
  // and test lines never reach the learner.
  for (SideState& side : sides) {
    if (side.cfg->scheme != Scheme::Bpe) continue;
    std::vector<std::string> train_lines = gather(*side.lines, idx.train);
    bpe::WordFrequencyMap wf = bpe::count_words(train_lines, side.cfg->bpe.pretokenize);
    side.merges = bpe::learn_bpe(wf, side.cfg->bpe);
    stages << "stage = learn_bpe " << side.tag << "\n";
    std::string name = std::string(side.tag) + ".merges";
    bpe::save_merges(*side.merges, out_path(name));
    outputs_block << "output = " << name << " sha256=" << sha256_file_hex(out_path(name))
                  << " merges=" << side.merges->size() << "\n";
    result.outputs.push_back(name);
  }

  const std::pair<const char*, const std::vector<std::int64_t>*> splits[3] = {
      {"train", &idx.train}, {"valid", &idx.valid}, {"test", &idx.test}};

  for (SideState& side : sides) {
    LineTokenizer tok = [&] {
      switch (side.cfg->scheme) {
        case Scheme::Alphabet:
          return LineTokenizer::alphabet(cfg.marker);
        case Scheme::Morpheme:
          return LineTokenizer::morpheme(cfg.marker, make_segmenter(side.cfg->segmenter_spec));
        case Scheme::Bpe:
          return LineTokenizer::bpe(bpe::MergeRanks(*side.merges), side.cfg->bpe, cfg.marker);
      }
      throw Error("unreachable scheme");
    }();
    for (const auto& [split_name, indices] : splits) {
      std::string name = std::string(split_name) + "." + side.tag + ".tok";
      emit(name, tokenize_lines(gather(*side.lines, *indices), tok), /*with_vocab=*/true);
      stages << "stage = tokenize " << name << "\n";
    }
  }

  manifest << "#manifest v1\n";
  manifest << "config_sha256 = " << sha256_hex(cfg.config_text) << "\n";
  manifest << "generator = " << rng::kPermutationName << "\n";
  manifest << "seed = " << cfg.split.seed << "\n";
  manifest << "normalization = trim+collapse-internal-whitespace\n";
  manifest << "corpus_lines = " << n << "\n";
  manifest << "split = " << cfg.split.describe() << "\n";
  manifest << "split_sizes = " << result.sizes.train << " " << result.sizes.valid << " "
           << result.sizes.test << "\n";
  manifest << "source_scheme = " << scheme_name(cfg.source_side.scheme) << "\n";
  manifest << "target_scheme = " << scheme_name(cfg.target_side.scheme) << "\n";
  manifest << stages.str();
  manifest << outputs_block.str();

  result.text = manifest.str();
  result.path = out_path("manifest.txt");
  std::ofstream mf(result.path, std::ios::binary);
  if (!mf) throw Error("cannot open for writing: " + result.path);
  mf << result.text;
  if (!mf) throw Error("write failed: " + result.path);
  result.outputs.push_back("manifest.txt");
  return result;
}

}  // namespace subtok::pipeline
