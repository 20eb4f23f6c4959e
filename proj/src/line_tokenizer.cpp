#include "subtok/line_tokenizer.hpp"

#include <sstream>

namespace subtok {

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

LineTokenizer LineTokenizer::alphabet(MarkerConfig cfg) {
  LineTokenizer t;
  t.scheme_ = Scheme::Alphabet;
  t.marker_ = cfg;
  return t;
}

LineTokenizer LineTokenizer::morpheme(MarkerConfig cfg, std::shared_ptr<Segmenter> segmenter) {
  LineTokenizer t;
  t.scheme_ = Scheme::Morpheme;
  t.marker_ = cfg;
  t.segmenter_ = std::move(segmenter);
  return t;
}

LineTokenizer LineTokenizer::bpe(bpe::MergeRanks ranks, bpe::BpeConfig cfg, MarkerConfig marker) {
  LineTokenizer t;
  t.scheme_ = Scheme::Bpe;
  t.marker_ = marker;
  t.ranks_ = std::make_shared<const bpe::MergeRanks>(std::move(ranks));
  t.bpe_ = std::move(cfg);
  return t;
}

bool LineTokenizer::parallel_safe() const {
  if (scheme_ != Scheme::Morpheme) return true;
  return dynamic_cast<ExternalSegmenter*>(segmenter_.get()) == nullptr;
}

std::string LineTokenizer::tokenize_line(const std::string& line) const {
  switch (scheme_) {
    case Scheme::Alphabet:
      return join_tokens(tokenize_alphabet(line, marker_).tokens);
    case Scheme::Morpheme:
      return join_tokens(tokenize_morpheme(line, *segmenter_, marker_).tokens);
    case Scheme::Bpe:
      return join_tokens(bpe::tokenize_bpe(line, *ranks_, bpe_).tokens);
  }
  throw Error("unreachable scheme");
}

std::string LineTokenizer::detokenize_line(const std::string& token_line, bool* warned) const {
  if (warned) *warned = false;
  TokenizedSentence ts{scheme_, split_tokens(token_line)};
  switch (scheme_) {
    case Scheme::Alphabet:
      return detokenize_alphabet(ts, marker_);
    case Scheme::Morpheme:
      return detokenize_morpheme(ts, marker_);
    case Scheme::Bpe:
      return bpe::detokenize_bpe(ts, bpe_, warned);
  }
  throw Error("unreachable scheme");
}

namespace {

[[noreturn]] void fail_line(const std::exception& e, std::size_t index) {
  throw FormatError(e.what(), index + 1);
}

}  // namespace

std::vector<std::string> tokenize_lines_serial(const std::vector<std::string>& lines,
                                               const LineTokenizer& tok) {
  std::vector<std::string> out(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out[i] = tok.tokenize_line(lines[i]);
    } catch (const std::exception& e) {
      fail_line(e, i);
    }
  }
  return out;
}

std::vector<std::string> tokenize_lines(const std::vector<std::string>& lines,
                                        const LineTokenizer& tok) {
  if (!tok.parallel_safe()) return tokenize_lines_serial(lines, tok);
  std::vector<std::string> out(lines.size());
#ifdef _OPENMP
  // Tokenization failures must not escape the parallel region; remember the
  // earliest one by line and rethrow after.
  std::exception_ptr failure = nullptr;
  std::size_t failure_line = 0;
  #pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(lines.size()); ++i) {
    try {
      out[i] = tok.tokenize_line(lines[i]);
    } catch (const std::exception& e) {
      try {
        fail_line(e, static_cast<std::size_t>(i));
      } catch (...) {
        #pragma omp critical(subtok_linetok_fail)
        if (!failure || static_cast<std::size_t>(i) < failure_line) {
          failure = std::current_exception();
          failure_line = static_cast<std::size_t>(i);
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  return tokenize_lines_serial(lines, tok);
#endif
  return out;
}

std::vector<std::string> detokenize_lines(const std::vector<std::string>& token_lines,
                                          const LineTokenizer& tok,
                                          std::vector<std::size_t>* warned_lines) {
  std::vector<std::string> out(token_lines.size());
  for (std::size_t i = 0; i < token_lines.size(); ++i) {
    bool warned = false;
    out[i] = tok.detokenize_line(token_lines[i], &warned);
    if (warned && warned_lines) warned_lines->push_back(i + 1);
  }
  return out;
}

}  // namespace subtok
