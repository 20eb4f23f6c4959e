#include "subtok/bpe_reference.hpp"

#include <algorithm>

namespace subtok::bpe::reference {

MergeTable learn_bpe(const WordFrequencyMap& wf, const BpeConfig& cfg) {
  MergeTable table;
  if (wf.empty()) return table;

  SymbolCorpus corpus = to_symbol_corpus(wf);
  const std::int64_t threshold = std::max<std::int64_t>(cfg.min_pair_frequency, 1);

  for (std::int64_t step = 0; step < cfg.num_merges; ++step) {
    PairCounts counts = count_pairs(corpus);
    if (counts.empty()) break;

    // PairCounts is ordered by (left, right), so a strict > scan lands on
    // the lexicographically smallest pair among the tied maxima.
    const SymbolPair* best = nullptr;
    std::int64_t best_count = 0;
    for (const auto& [pair, count] : counts) {
      if (count > best_count) {
        best_count = count;
        best = &pair;
      }
    }
    if (best_count < threshold) break;

    const std::string merged = best->first + best->second;
    for (SymbolWord& w : corpus) {
      std::vector<std::string> next;
      next.reserve(w.symbols.size());
      for (std::size_t i = 0; i < w.symbols.size();) {
        if (i + 1 < w.symbols.size() && w.symbols[i] == best->first &&
            w.symbols[i + 1] == best->second) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(std::move(w.symbols[i]));
          i += 1;
        }
      }
      w.symbols.swap(next);
    }
    table.merges.push_back(*best);
  }
  return table;
}

}  // namespace subtok::bpe::reference
