#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subtok/error.hpp"

namespace subtok::corpus {

// Aligned source/target sentences. The reader normalizes whitespace (trim,
// collapse internal runs to single spaces) because the tokenizers' round-trip
// guarantees assume it; the normalization is recorded in pipeline manifests.
struct ParallelCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::string source_path;
  std::string target_path;

  std::int64_t size() const { return static_cast<std::int64_t>(source.size()); }
};

// Trim and collapse spaces/tabs; strips a trailing CR so CRLF files read
// cleanly.
std::string normalize_line(std::string_view line);

std::vector<std::string> read_lines(std::istream& in, bool normalize = false);
std::vector<std::string> read_lines_file(const std::string& path, bool normalize = false);
void write_lines(const std::string& path, const std::vector<std::string>& lines);

// Two aligned one-sentence-per-line files. Throws LengthMismatch when the
// line counts differ.
ParallelCorpus read_parallel(const std::string& source_path, const std::string& target_path);

// Single file with "source<TAB>target" per line. A line without a TAB is a
// FormatError carrying the line number.
ParallelCorpus read_parallel_tsv(const std::string& path);

struct SplitSpec {
  enum class Mode { Ratio, Counts };
  Mode mode = Mode::Ratio;
  std::array<std::int64_t, 3> ratio = {98, 1, 1};
  std::array<std::int64_t, 3> counts = {0, 0, 0};
  std::uint64_t seed = 0;

  // "98:1:1" -> ratio mode; parts must be positive integers.
  static SplitSpec from_ratio_string(const std::string& text, std::uint64_t seed);
  // "980,10,10" -> counts mode.
  static SplitSpec from_counts_string(const std::string& text, std::uint64_t seed);

  std::string describe() const;
};

struct SplitSizes {
  std::int64_t train = 0;
  std::int64_t valid = 0;
  std::int64_t test = 0;
  bool operator==(const SplitSizes&) const = default;
};

// Ratio mode: largest-remainder apportionment with every part held to at
// least one line (the excess comes back off the most over-allocated part).
// Counts mode: the counts verbatim; they must sum to n.
SplitSizes split_sizes(std::int64_t n, const SplitSpec& spec);

struct SplitIndices {
  std::vector<std::int64_t> train;
  std::vector<std::int64_t> valid;
  std::vector<std::int64_t> test;
};

// Shuffles 0..n-1 with the seeded permutation from shuffle.hpp and deals the
// prefix/middle/suffix to train/valid/test. The same index sets apply to
// source and target, preserving alignment.
SplitIndices split_corpus(std::int64_t n, const SplitSpec& spec);

struct VocabReport {
  std::int64_t unique_tokens = 0;
  std::int64_t total_tokens = 0;
  // Sorted by descending count, then token.
  std::vector<std::pair<std::string, std::int64_t>> frequencies;
};

VocabReport vocab_stats(const std::vector<std::string>& token_lines);

}  // namespace subtok::corpus
