#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subtok/bpe.hpp"
#include "subtok/segmenter.hpp"
#include "subtok/tokenize.hpp"

namespace subtok {

// One configured tokenization scheme applied line-wise, with its inverse.
// Tokens are joined by single spaces on output; no token ever contains one.
class LineTokenizer {
public:
  static LineTokenizer alphabet(MarkerConfig cfg);
  static LineTokenizer morpheme(MarkerConfig cfg, std::shared_ptr<Segmenter> segmenter);
  static LineTokenizer bpe(bpe::MergeRanks ranks, bpe::BpeConfig cfg,
                           MarkerConfig marker = {});

  Scheme scheme() const { return scheme_; }

  // An external segmenter is a serial resource; everything else is pure.
  bool parallel_safe() const;

  std::string tokenize_line(const std::string& line) const;

  // warned flags a stripped trailing continuation marker (BPE only).
  std::string detokenize_line(const std::string& token_line, bool* warned = nullptr) const;

private:
  LineTokenizer() = default;

  Scheme scheme_ = Scheme::Alphabet;
  MarkerConfig marker_;
  std::shared_ptr<Segmenter> segmenter_;
  std::shared_ptr<const bpe::MergeRanks> ranks_;
  bpe::BpeConfig bpe_;
};

// Applies tok to every line, output lines in input order. Runs the loop with
// OpenMP when the tokenizer is parallel-safe; the result is identical to the
// serial variant either way. A per-line failure is rethrown as FormatError
// carrying the 1-based line number.
std::vector<std::string> tokenize_lines(const std::vector<std::string>& lines,
                                        const LineTokenizer& tok);
std::vector<std::string> tokenize_lines_serial(const std::vector<std::string>& lines,
                                               const LineTokenizer& tok);

// Line-wise inverse; warned_lines (when non-null) collects 1-based line
// numbers that had a trailing continuation marker stripped.
std::vector<std::string> detokenize_lines(const std::vector<std::string>& token_lines,
                                          const LineTokenizer& tok,
                                          std::vector<std::size_t>* warned_lines = nullptr);

}  // namespace subtok
