#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "subtok/error.hpp"
#include "subtok/tokenize.hpp"

namespace subtok::bpe {

using SymbolPair = std::pair<std::string, std::string>;

// Ordered list of learned merges; rank = position, 0 learned first.
struct MergeTable {
  std::vector<SymbolPair> merges;

  bool operator==(const MergeTable&) const = default;
  std::size_t size() const { return merges.size(); }
};

struct BpeConfig {
  std::int64_t num_merges = 32000;
  std::string continuation_marker = "@@";
  bool pretokenize = false;
  std::int64_t min_pair_frequency = 2;
};

using WordFrequencyMap = std::map<std::string, std::int64_t>;
using PairCounts = std::map<SymbolPair, std::int64_t>;

// One word held as its current symbol sequence, weighted by corpus frequency.
struct SymbolWord {
  std::vector<std::string> symbols;
  std::int64_t freq;
};
using SymbolCorpus = std::vector<SymbolWord>;

// Whitespace-splits each line and counts word occurrences. With pretokenize,
// rule_segment is applied to each word first and each piece counts as a word.
WordFrequencyMap count_words(const std::vector<std::string>& corpus_lines, bool pretokenize);

// Splits every word into single-character symbols, in map iteration order.
SymbolCorpus to_symbol_corpus(const WordFrequencyMap& wf);

// Position-based adjacent-pair counts: a pair occurring k times in a word of
// frequency f contributes k*f. Pairs never cross word boundaries.
PairCounts count_pairs(const SymbolCorpus& corpus);

// OpenMP variant; the totals are exactly equal to the serial result.
PairCounts count_pairs_parallel(const SymbolCorpus& corpus);

// Deterministic BPE learner: repeatedly merges the highest-count pair (ties
// broken by lexicographic order of (left, right) as UTF-8 bytes), rewriting
// occurrences left-to-right without overlap, until num_merges merges were
// recorded, the best count drops below min_pair_frequency, or no pair is
// left. Incremental pair-count maintenance over an indexed max structure.
MergeTable learn_bpe(const WordFrequencyMap& wf, const BpeConfig& cfg);

// Same learner, also returning the symbol sequence each word held at
// termination (diagnostics and the application-consistency check).
struct LearnResult {
  MergeTable table;
  std::map<std::string, std::vector<std::string>> final_words;
};
LearnResult learn_bpe_full(const WordFrequencyMap& wf, const BpeConfig& cfg);

// Rank lookup frozen from a merge table; pure and shareable across threads.
class MergeRanks {
public:
  MergeRanks() = default;
  explicit MergeRanks(const MergeTable& table);

  // Rank of (left, right), or nullopt when the pair was never learned.
  std::optional<std::int64_t> rank(const std::string& left, const std::string& right) const;
  std::size_t size() const { return ranks_.size(); }

private:
  std::unordered_map<std::string, std::int64_t> ranks_;  // key: left + '\n' + right
};

// Segments one space-free word: starting from its character sequence,
// repeatedly applies the lowest-ranked merge present until none applies.
std::vector<std::string> apply_bpe_word(const std::string& word, const MergeRanks& ranks);
std::vector<std::string> apply_bpe_word(const std::string& word, const MergeTable& table);

// BPE scheme over a sentence: each word (or rule_segment piece when
// cfg.pretokenize) is segmented and every subword except the last of its
// word carries the continuation marker. No space-marker tokens are emitted;
// spaces are implicit at word boundaries. In pretokenize mode a piece no
// merge touched is emitted whole instead of char-split.
TokenizedSentence tokenize_bpe(const std::string& sentence, const MergeRanks& ranks,
                               const BpeConfig& cfg);

// Joins subwords: a token ending with the continuation marker glues to its
// successor without a space. A trailing marker on the final token is
// stripped; *trailing_marker_stripped reports it when non-null. In
// pretokenize mode closing punctuation attaches to the left (lossy).
std::string detokenize_bpe(const TokenizedSentence& ts, const BpeConfig& cfg,
                           bool* trailing_marker_stripped = nullptr);

// Merge-table file: line 1 is exactly "#merges v1", then one
// "<left><SPACE><right>" line per merge in learned order, LF endings,
// trailing newline required. load(save(t)) == t.
std::string serialize_merges(const MergeTable& table);
MergeTable parse_merges(std::string_view text);
void save_merges(const MergeTable& table, const std::string& path);
MergeTable load_merges(const std::string& path);

}  // namespace subtok::bpe
