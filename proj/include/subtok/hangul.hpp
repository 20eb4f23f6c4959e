#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subtok/error.hpp"

namespace subtok::hangul {

// Precomposed Hangul syllable block.
inline constexpr char32_t kSyllableBase = 0xAC00;
inline constexpr char32_t kSyllableLast = 0xD7A3;
inline constexpr int kLeadCount = 19;
inline constexpr int kVowelCount = 21;
inline constexpr int kTailCount = 28;  // index 0 = no tail

// The lead / vowel / tail indices of one precomposed syllable.
//   code point = 0xAC00 + (lead * 21 + vowel) * 28 + tail
struct JamoTriple {
  int lead;   // [0, 19)
  int vowel;  // [0, 21)
  int tail;   // [0, 28), 0 means no tail

  bool operator==(const JamoTriple&) const = default;
};

inline constexpr bool is_syllable(char32_t cp) {
  return cp >= kSyllableBase && cp <= kSyllableLast;
}

// True for the compatibility jamo consonant/vowel range U+3131..U+3163.
bool is_compat_jamo(char32_t cp);

// The compatibility jamo character for each syllable slot. Initial and final
// consonants of the same shape map to the same character; compound tails
// (e.g. U+3133) are single characters. tail index must be in [1, 28).
char32_t lead_char(int index);
char32_t vowel_char(int index);
char32_t tail_char(int index);

// Reverse slot lookups over the compatibility jamo range. Empty when the
// character cannot fill that slot (e.g. U+3133 is never a lead).
std::optional<int> lead_index(char32_t cp);
std::optional<int> vowel_index(char32_t cp);
std::optional<int> tail_index(char32_t cp);

// Splits one precomposed syllable into its jamo indices.
// Throws NotHangulSyllable for anything outside [U+AC00, U+D7A3].
JamoTriple decompose_syllable(char32_t cp);

// Appends the 2-3 compatibility jamo characters of cp to out.
void decompose_to(char32_t cp, std::vector<char32_t>& out);

// Per-character decomposition of an arbitrary code point stream: syllables
// expand to their jamo, everything else passes through.
std::vector<char32_t> decompose_stream(const std::vector<char32_t>& text);

// Recomposes maximal well-formed jamo runs into syllables with a greedy
// L -> LV -> LVT automaton and one character of lookahead: a consonant in
// tail position is demoted to the next syllable's lead when the following
// character is a vowel. Characters that fit no syllable slot are emitted
// verbatim. Total function; inverse of decompose_stream on syllable text.
std::vector<char32_t> compose_jamo(const std::vector<char32_t>& jamo_stream);

// UTF-8 convenience wrappers.
std::string decompose_stream(const std::string& text);
std::string compose_jamo(const std::string& jamo_stream);

}  // namespace subtok::hangul
