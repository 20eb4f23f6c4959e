#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subtok/error.hpp"

namespace subtok::bleu {

inline constexpr int kMaxOrder = 4;

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, std::int64_t>;

struct Smoothing {
  enum class Kind { None, AddEpsilon };
  Kind kind = Kind::None;
  double epsilon = 0.1;

  static Smoothing none() { return {}; }
  static Smoothing add_epsilon(double eps) { return {Kind::AddEpsilon, eps}; }
};

// Exact integer precision ratio for one n-gram order.
struct Precision {
  std::int64_t matched = 0;
  std::int64_t total = 0;
};

struct BleuReport {
  std::array<Precision, kMaxOrder> precisions;
  std::int64_t candidate_length = 0;  // total hypothesis tokens
  std::int64_t reference_length = 0;  // total effective reference tokens
  double brevity_penalty = 0.0;
  double score = 0.0;  // [0, 100]

  // "BLEU=<score> p1=<m>/<t> ... BP=<bp> c=<c> r=<r>"
  std::string machine_line() const;
  std::string pretty() const;
};

// Sliding-window n-gram counts; fewer than n tokens yields an empty map.
NgramCounts ngram_counts(const Tokens& tokens, int n);

// Corpus-level modified n-gram precision: per sentence, hypothesis n-gram
// counts are clipped by the maximum count of that n-gram over the
// sentence's references, then matched/total are summed over the corpus.
Precision modified_precision(const std::vector<Tokens>& hyps,
                             const std::vector<std::vector<Tokens>>& refs, int n);

// 1 when c >= r, exp(1 - r/c) when 0 < c < r, 0 when c = 0. Requires r > 0.
double brevity_penalty(std::int64_t c, std::int64_t r);

// Corpus BLEU with uniform 1/4 weights over orders 1..4. Effective reference
// length per sentence is the reference length closest to the hypothesis
// length, ties to the shorter. Unsmoothed, any order with zero matches out
// of a nonzero total zeroes the score; orders the corpus is too short to
// have at all are skipped, so identity still scores 100 on tiny corpora.
BleuReport bleu_corpus(const std::vector<Tokens>& hyps,
                       const std::vector<std::vector<Tokens>>& refs,
                       const Smoothing& smoothing = Smoothing::none());

// Serial reference for the OpenMP corpus accumulation; identical tallies.
BleuReport bleu_corpus_serial(const std::vector<Tokens>& hyps,
                              const std::vector<std::vector<Tokens>>& refs,
                              const Smoothing& smoothing = Smoothing::none());

// Whitespace-splits one sentence per line.
std::vector<Tokens> tokenize_lines(const std::vector<std::string>& lines);

}  // namespace subtok::bleu
