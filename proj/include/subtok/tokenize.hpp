#pragma once

#include <string>
#include <vector>

#include "subtok/error.hpp"
#include "subtok/segmenter.hpp"

namespace subtok {

enum class Scheme { Alphabet, Morpheme, Bpe };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// How to treat input that already contains the space marker.
//   Reject: throw MarkerCollision.
//   Escape: substitute the marker with cfg.escape_char before tokenizing
//           (lossy: detokenization restores the substitute, not the marker).
enum class MarkerStrictness { Reject, Escape };

struct MarkerConfig {
  char32_t space_marker = 0x2581;  // ▁
  MarkerStrictness strictness = MarkerStrictness::Reject;
  char32_t escape_char = '_';

  std::string marker_utf8() const;
};

struct TokenizedSentence {
  Scheme scheme;
  std::vector<std::string> tokens;
};

// Replaces every space with the marker; all other characters unchanged.
// Throws MarkerCollision under Reject when the marker is already present.
std::string mark_spaces(const std::string& sentence, const MarkerConfig& cfg);

// Alphabet scheme: spaces become marker tokens, Hangul syllables expand to
// their compatibility jamo as consecutive single-character tokens, every
// other character becomes one single-character token.
TokenizedSentence tokenize_alphabet(const std::string& sentence, const MarkerConfig& cfg);

// Inverse of tokenize_alphabet: marker tokens become spaces, jamo runs are
// recomposed into syllables.
std::string detokenize_alphabet(const TokenizedSentence& ts, const MarkerConfig& cfg);

// Splits a space-free word at boundaries between letter/digit runs and
// punctuation/symbol runs. Surface preserving: the concatenation of the
// returned pieces equals the word.
std::vector<std::string> rule_segment(const std::string& word);

// Morpheme scheme: the sentence is split on spaces into words, each word is
// segmented, and one marker token separates consecutive words. Marker
// positions depend only on the input spaces, never on the segmenter.
TokenizedSentence tokenize_morpheme(const std::string& sentence, Segmenter& seg,
                                    const MarkerConfig& cfg);

// Concatenates tokens, turning marker tokens into spaces. Exact inverse of
// tokenize_morpheme for surface-preserving segmenters.
std::string detokenize_morpheme(const TokenizedSentence& ts, const MarkerConfig& cfg);

}  // namespace subtok
