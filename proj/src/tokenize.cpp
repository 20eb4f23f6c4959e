#include "subtok/tokenize.hpp"

#include <algorithm>

#include "subtok/hangul.hpp"
#include "subtok/utf8.hpp"

namespace subtok {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Alphabet: return "alphabet";
    case Scheme::Morpheme: return "morpheme";
    case Scheme::Bpe: return "bpe";
  }
  throw Error("unreachable scheme");
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "alphabet") return Scheme::Alphabet;
  if (name == "morpheme") return Scheme::Morpheme;
  if (name == "bpe") return Scheme::Bpe;
  throw BadSpec("unknown scheme: " + name);
}

std::string MarkerConfig::marker_utf8() const { return utf8::encode(space_marker); }

namespace {

// Applies the collision policy in place, returning the possibly substituted
// stream. Under Reject a marker in the input throws.
void resolve_collisions(std::vector<char32_t>& cps, const MarkerConfig& cfg) {
  for (char32_t& cp : cps) {
    if (cp != cfg.space_marker) continue;
    if (cfg.strictness == MarkerStrictness::Reject) {
      throw MarkerCollision("input contains the space marker U+" +
                            std::to_string(static_cast<uint32_t>(cfg.space_marker)));
    }
    cp = cfg.escape_char;
  }
}

bool is_fullwidth_punct(char32_t cp) {
  return (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

// Letter/digit vs punctuation/symbol classes for rule_segment. ASCII is
// classified exactly; beyond ASCII, the common punctuation blocks seen in
// Korean/English news text are symbols and everything else counts as a
// letter.
bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= 'a' && cp <= 'z');
  }
  if (cp >= 0x00A1 && cp <= 0x00BF) return false;  // Latin-1 punctuation
  if (cp == 0x00D7 || cp == 0x00F7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp >= 0x2500 && cp <= 0x25FF) return false;  // box/block/geometric
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (is_fullwidth_punct(cp)) return false;
  return true;
}

}  // namespace

std::string mark_spaces(const std::string& sentence, const MarkerConfig& cfg) {
  std::vector<char32_t> cps = utf8::decode(sentence);
  resolve_collisions(cps, cfg);
  for (char32_t& cp : cps) {
    if (cp == U' ') cp = cfg.space_marker;
  }
  return utf8::encode(cps);
}

TokenizedSentence tokenize_alphabet(const std::string& sentence, const MarkerConfig& cfg) {
  std::vector<char32_t> cps = utf8::decode(sentence);
  resolve_collisions(cps, cfg);

  TokenizedSentence ts{Scheme::Alphabet, {}};
  ts.tokens.reserve(cps.size());
  std::vector<char32_t> jamo;
  for (char32_t cp : cps) {
    if (cp == U' ') {
      ts.tokens.push_back(utf8::encode(cfg.space_marker));
    } else if (hangul::is_syllable(cp)) {
      jamo.clear();
      hangul::decompose_to(cp, jamo);
      for (char32_t j : jamo) ts.tokens.push_back(utf8::encode(j));
    } else {
      ts.tokens.push_back(utf8::encode(cp));
    }
  }
  return ts;
}

std::string detokenize_alphabet(const TokenizedSentence& ts, const MarkerConfig& cfg) {
  const std::string marker = utf8::encode(cfg.space_marker);
  std::vector<char32_t> stream;
  stream.reserve(ts.tokens.size());
  for (const std::string& tok : ts.tokens) {
    if (tok == marker) {
      stream.push_back(U' ');
    } else {
      for (char32_t cp : utf8::decode(tok)) stream.push_back(cp);
    }
  }
  return utf8::encode(hangul::compose_jamo(stream));
}

std::vector<std::string> rule_segment(const std::string& word) {
  std::vector<char32_t> cps = utf8::decode(word);
  std::vector<std::string> pieces;
  std::string current;
  bool current_class = false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    bool cls = is_word_char(cps[i]);
    if (i > 0 && cls != current_class) {
      pieces.push_back(std::move(current));
      current.clear();
    }
    utf8::append(current, cps[i]);
    current_class = cls;
  }
  if (!current.empty()) pieces.push_back(std::move(current));
  return pieces;
}

const std::string& RuleSegmenter::name() const {
  static const std::string n = "rule";
  return n;
}

std::vector<std::string> RuleSegmenter::segment(const std::string& word) {
  return rule_segment(word);
}

TokenizedSentence tokenize_morpheme(const std::string& sentence, Segmenter& seg,
                                    const MarkerConfig& cfg) {
  std::vector<char32_t> cps = utf8::decode(sentence);
  resolve_collisions(cps, cfg);

  TokenizedSentence ts{Scheme::Morpheme, {}};
  const std::string marker = utf8::encode(cfg.space_marker);

  std::string word;
  auto emit_word = [&] {
    if (word.empty()) return;
    std::vector<std::string> morphemes = seg.segment(word);
    if (morphemes.empty())
      throw SegmenterFailure("segmenter '" + seg.name() + "' returned no morphemes for: " + word);
    for (std::string& m : morphemes) {
      if (m.empty() || m.find(' ') != std::string::npos)
        throw SegmenterFailure("segmenter '" + seg.name() + "' returned a malformed morpheme for: " + word);
      ts.tokens.push_back(std::move(m));
    }
    word.clear();
  };

  for (char32_t cp : cps) {
    if (cp == U' ') {
      emit_word();
      ts.tokens.push_back(marker);
    } else {
      utf8::append(word, cp);
    }
  }
  emit_word();
  return ts;
}

std::string detokenize_morpheme(const TokenizedSentence& ts, const MarkerConfig& cfg) {
  const std::string marker = utf8::encode(cfg.space_marker);
  std::string out;
  for (const std::string& tok : ts.tokens) {
    if (tok == marker)
      out.push_back(' ');
    else
      out += tok;
  }
  return out;
}

}  // namespace subtok
