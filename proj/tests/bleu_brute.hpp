#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Brute-force modified n-gram precision, kept deliberately free of the
// production code's counting structures: distinct n-grams are found by
// position scans and every count is a rescan. Quadratic and only for tests.
namespace bleu_brute {

using Tokens = std::vector<std::string>;

inline bool same_ngram(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j, int n) {
  for (int k = 0; k < n; ++k) {
    if (a[i + k] != b[j + k]) return false;
  }
  return true;
}

inline std::int64_t occurrences(const Tokens& where, const Tokens& gram_src, std::size_t gram_at,
                                int n) {
  if (static_cast<int>(where.size()) < n) return 0;
  std::int64_t count = 0;
  for (std::size_t i = 0; i + n <= where.size(); ++i) {
    if (same_ngram(where, i, gram_src, gram_at, n)) ++count;
  }
  return count;
}

// (matched, total) for one sentence pair at order n.
inline std::pair<std::int64_t, std::int64_t> sentence_precision(
    const Tokens& hyp, const std::vector<Tokens>& refs, int n) {
  std::int64_t total = static_cast<int>(hyp.size()) >= n
                           ? static_cast<std::int64_t>(hyp.size()) - n + 1
                           : 0;
  std::int64_t matched = 0;
  for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
    // Only the first occurrence of each distinct n-gram contributes.
    bool seen_before = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (same_ngram(hyp, j, hyp, i, n)) {
        seen_before = true;
        break;
      }
    }
    if (seen_before) continue;
    std::int64_t in_hyp = occurrences(hyp, hyp, i, n);
    std::int64_t ref_max = 0;
    for (const Tokens& ref : refs) ref_max = std::max(ref_max, occurrences(ref, hyp, i, n));
    matched += std::min(in_hyp, ref_max);
  }
  return {matched, total};
}

inline std::pair<std::int64_t, std::int64_t> corpus_precision(
    const std::vector<Tokens>& hyps, const std::vector<std::vector<Tokens>>& refs, int n) {
  std::int64_t matched = 0, total = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    auto [m, t] = sentence_precision(hyps[i], refs[i], n);
    matched += m;
    total += t;
  }
  return {matched, total};
}

}  // namespace bleu_brute
