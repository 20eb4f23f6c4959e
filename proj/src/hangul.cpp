#include "subtok/hangul.hpp"

#include "subtok/utf8.hpp"

namespace subtok::hangul {

namespace {

// Compatibility jamo for the 19 leads, in syllable-block order:
// ㄱ ㄲ ㄴ ㄷ ㄸ ㄹ ㅁ ㅂ ㅃ ㅅ ㅆ ㅇ ㅈ ㅉ ㅊ ㅋ ㅌ ㅍ ㅎ
constexpr char32_t kLeads[kLeadCount] = {
    0x3131, 0x3132, 0x3134, 0x3137, 0x3138, 0x3139, 0x3141,
    0x3142, 0x3143, 0x3145, 0x3146, 0x3147, 0x3148, 0x3149,
    0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

// The 21 vowels are contiguous in the compatibility block: ㅏ..ㅣ.
constexpr char32_t kVowelBase = 0x314F;

// Compatibility jamo for tails 1..27:
// ㄱ ㄲ ㄳ ㄴ ㄵ ㄶ ㄷ ㄹ ㄺ ㄻ ㄼ ㄽ ㄾ ㄿ ㅀ ㅁ ㅂ ㅄ ㅅ ㅆ ㅇ ㅈ ㅊ ㅋ ㅌ ㅍ ㅎ
constexpr char32_t kTails[kTailCount - 1] = {
    0x3131, 0x3132, 0x3133, 0x3134, 0x3135, 0x3136, 0x3137,
    0x3139, 0x313A, 0x313B, 0x313C, 0x313D, 0x313E, 0x313F,
    0x3140, 0x3141, 0x3142, 0x3144, 0x3145, 0x3146, 0x3147,
    0x3148, 0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

constexpr char32_t kCompatFirst = 0x3131;
constexpr char32_t kCompatLast = 0x3163;
constexpr int kCompatSpan = kCompatLast - kCompatFirst + 1;

struct SlotTables {
  std::array<signed char, kCompatSpan> lead{};
  std::array<signed char, kCompatSpan> vowel{};
  std::array<signed char, kCompatSpan> tail{};

  SlotTables() {
    lead.fill(-1);
    vowel.fill(-1);
    tail.fill(-1);
    for (int i = 0; i < kLeadCount; ++i) lead[kLeads[i] - kCompatFirst] = static_cast<signed char>(i);
    for (int i = 0; i < kVowelCount; ++i) vowel[kVowelBase + i - kCompatFirst] = static_cast<signed char>(i);
    for (int i = 1; i < kTailCount; ++i) tail[kTails[i - 1] - kCompatFirst] = static_cast<signed char>(i);
  }
};

const SlotTables& slots() {
  static const SlotTables tables;
  return tables;
}

std::optional<int> slot_lookup(const std::array<signed char, kCompatSpan>& table, char32_t cp) {
  if (cp < kCompatFirst || cp > kCompatLast) return std::nullopt;
  signed char v = table[cp - kCompatFirst];
  if (v < 0) return std::nullopt;
  return static_cast<int>(v);
}

}  // namespace

bool is_compat_jamo(char32_t cp) {
  return cp >= kCompatFirst && cp <= kCompatLast;
}

char32_t lead_char(int index) { return kLeads[index]; }
char32_t vowel_char(int index) { return static_cast<char32_t>(kVowelBase + index); }
char32_t tail_char(int index) { return kTails[index - 1]; }

std::optional<int> lead_index(char32_t cp) { return slot_lookup(slots().lead, cp); }
std::optional<int> vowel_index(char32_t cp) { return slot_lookup(slots().vowel, cp); }
std::optional<int> tail_index(char32_t cp) { return slot_lookup(slots().tail, cp); }

JamoTriple decompose_syllable(char32_t cp) {
  if (!is_syllable(cp)) {
    throw NotHangulSyllable("code point U+" + std::to_string(static_cast<uint32_t>(cp)) +
                            " is not a precomposed Hangul syllable");
  }
  int index = static_cast<int>(cp - kSyllableBase);
  JamoTriple t;
  t.tail = index % kTailCount;
  t.vowel = (index / kTailCount) % kVowelCount;
  t.lead = index / (kTailCount * kVowelCount);
  return t;
}

void decompose_to(char32_t cp, std::vector<char32_t>& out) {
  JamoTriple t = decompose_syllable(cp);
  out.push_back(lead_char(t.lead));
  out.push_back(vowel_char(t.vowel));
  if (t.tail != 0) out.push_back(tail_char(t.tail));
}

std::vector<char32_t> decompose_stream(const std::vector<char32_t>& text) {
  std::vector<char32_t> out;
  out.reserve(text.size() * 2);
  for (char32_t cp : text) {
    if (is_syllable(cp))
      decompose_to(cp, out);
    else
      out.push_back(cp);
  }
  return out;
}

namespace {

char32_t compose(int lead, int vowel, int tail) {
  return kSyllableBase +
         static_cast<char32_t>((lead * kVowelCount + vowel) * kTailCount + tail);
}

}  // namespace

std::vector<char32_t> compose_jamo(const std::vector<char32_t>& stream) {
  std::vector<char32_t> out;
  out.reserve(stream.size());

  int pending_lead = -1;   // lead index, or -1
  int pending_vowel = -1;  // vowel index once in LV state

  auto flush = [&] {
    if (pending_lead >= 0) {
      if (pending_vowel >= 0)
        out.push_back(compose(pending_lead, pending_vowel, 0));
      else
        out.push_back(lead_char(pending_lead));
    }
    pending_lead = -1;
    pending_vowel = -1;
  };

  const std::size_t n = stream.size();
  for (std::size_t i = 0; i < n; ++i) {
    char32_t cp = stream[i];
    if (pending_lead < 0) {
      if (auto l = lead_index(cp)) {
        pending_lead = *l;
      } else {
        out.push_back(cp);
      }
      continue;
    }
    if (pending_vowel < 0) {
      // L state: only a vowel extends the syllable.
      if (auto v = vowel_index(cp)) {
        pending_vowel = *v;
      } else {
        flush();
        if (auto l = lead_index(cp))
          pending_lead = *l;
        else
          out.push_back(cp);
      }
      continue;
    }
    // LV state.
    auto t = tail_index(cp);
    if (t) {
      bool next_is_vowel = i + 1 < n && vowel_index(stream[i + 1]).has_value();
      auto as_lead = lead_index(cp);
      if (next_is_vowel && as_lead) {
        // Demote: this consonant leads the next syllable.
        out.push_back(compose(pending_lead, pending_vowel, 0));
        pending_lead = *as_lead;
        pending_vowel = -1;
      } else {
        out.push_back(compose(pending_lead, pending_vowel, *t));
        pending_lead = -1;
        pending_vowel = -1;
      }
      continue;
    }
    // Not a valid tail: close the LV syllable, then reprocess cp fresh.
    out.push_back(compose(pending_lead, pending_vowel, 0));
    pending_lead = -1;
    pending_vowel = -1;
    if (auto l = lead_index(cp)) {
      pending_lead = *l;
    } else {
      out.push_back(cp);
    }
  }
  flush();
  return out;
}

std::string decompose_stream(const std::string& text) {
  return utf8::encode(decompose_stream(utf8::decode(text)));
}

std::string compose_jamo(const std::string& jamo_stream) {
  return utf8::encode(compose_jamo(utf8::decode(jamo_stream)));
}

}  // namespace subtok::hangul
