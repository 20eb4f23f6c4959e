#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subtok/bpe.hpp"
#include "subtok/corpus.hpp"
#include "subtok/tokenize.hpp"

namespace subtok::pipeline {

// Per-side tokenization choice.
struct SideConfig {
  Scheme scheme = Scheme::Alphabet;
  std::string segmenter_spec = "rule";  // morpheme only
  bpe::BpeConfig bpe;                   // bpe only
};

struct PipelineConfig {
  // Either source+target paths or a single TSV.
  std::string source_path;
  std::string target_path;
  std::string tsv_path;
  std::string out_dir;

  corpus::SplitSpec split;
  SideConfig source_side;
  SideConfig target_side;
  MarkerConfig marker;

  // Raw config text; its SHA-256 goes into the manifest.
  std::string config_text;

  static PipelineConfig from_json(const std::string& json_text);
  static PipelineConfig from_json_file(const std::string& path);
};

struct RunManifest {
  std::string path;                  // manifest file written under out_dir
  std::vector<std::string> outputs;  // emitted files, relative to out_dir
  corpus::SplitSizes sizes;
  std::string text;                  // full manifest body
};

// split -> learn BPE on the training split only (when a side uses bpe) ->
// tokenize every split on both sides -> write token files, merge tables and
// a manifest recording the config hash, seed, stages, per-output checksums
// and token statistics. Outputs depend only on (corpus bytes, config, seed).
RunManifest run_pipeline(const PipelineConfig& cfg);

}  // namespace subtok::pipeline
