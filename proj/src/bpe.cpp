#include "subtok/bpe.hpp"

#include <algorithm>

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "subtok/utf8.hpp"

namespace subtok::bpe {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> char_symbols(const std::string& word) {
  std::vector<std::string> syms;
  for (char32_t cp : utf8::decode(word)) syms.push_back(utf8::encode(cp));
  return syms;
}

}  // namespace

WordFrequencyMap count_words(const std::vector<std::string>& corpus_lines, bool pretokenize) {
  WordFrequencyMap wf;
  for (const std::string& line : corpus_lines) {
    for (std::string& word : split_ws(line)) {
      if (pretokenize) {
        for (std::string& piece : rule_segment(word)) ++wf[std::move(piece)];
      } else {
        ++wf[std::move(word)];
      }
    }
  }
  return wf;
}

SymbolCorpus to_symbol_corpus(const WordFrequencyMap& wf) {
  SymbolCorpus corpus;
  corpus.reserve(wf.size());
  for (const auto& [word, freq] : wf) corpus.push_back({char_symbols(word), freq});
  return corpus;
}

PairCounts count_pairs(const SymbolCorpus& corpus) {
  PairCounts counts;
  for (const SymbolWord& w : corpus) {
    for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
      counts[{w.symbols[i], w.symbols[i + 1]}] += w.freq;
    }
  }
  return counts;
}

PairCounts count_pairs_parallel(const SymbolCorpus& corpus) {
#ifdef _OPENMP
  // Accumulate into per-thread hash maps keyed by "left\nright" (symbols
  // never contain a newline), then fold into the ordered result. Integer
  // sums in any order equal the serial totals exactly.
  std::unordered_map<std::string, std::int64_t> flat;
  #pragma omp parallel
  {
    std::unordered_map<std::string, std::int64_t> local;
    std::string key;
    #pragma omp for nowait
    for (std::ptrdiff_t wi = 0; wi < static_cast<std::ptrdiff_t>(corpus.size()); ++wi) {
      const SymbolWord& w = corpus[wi];
      for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
        key.clear();
        key += w.symbols[i];
        key += '\n';
        key += w.symbols[i + 1];
        local[key] += w.freq;
      }
    }
    #pragma omp critical(subtok_pair_merge)
    for (auto& [k, n] : local) flat[k] += n;
  }
  std::vector<std::pair<SymbolPair, std::int64_t>> items;
  items.reserve(flat.size());
  for (auto& [k, n] : flat) {
    std::size_t nl = k.find('\n');
    items.emplace_back(SymbolPair{k.substr(0, nl), k.substr(nl + 1)}, n);
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return PairCounts(items.begin(), items.end());  // linear for sorted input
#else
  return count_pairs(corpus);
#endif
}

MergeRanks::MergeRanks(const MergeTable& table) {
  ranks_.reserve(table.merges.size() * 2);
  for (std::size_t i = 0; i < table.merges.size(); ++i) {
    const auto& [l, r] = table.merges[i];
    ranks_.emplace(l + '\n' + r, static_cast<std::int64_t>(i));
  }
}

std::optional<std::int64_t> MergeRanks::rank(const std::string& left,
                                             const std::string& right) const {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key += left;
  key += '\n';
  key += right;
  auto it = ranks_.find(key);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> apply_bpe_word(const std::string& word, const MergeRanks& ranks) {
  std::vector<std::string> syms = char_symbols(word);
  if (syms.size() < 2 || ranks.size() == 0) return syms;

  std::vector<std::string> next;
  while (syms.size() >= 2) {
    std::int64_t best_rank = -1;
    std::size_t best_at = 0;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto r = ranks.rank(syms[i], syms[i + 1]);
      if (r && (best_rank < 0 || *r < best_rank)) {
        best_rank = *r;
        best_at = i;
      }
    }
    if (best_rank < 0) break;

    const std::string left = syms[best_at];
    const std::string right = syms[best_at + 1];
    next.clear();
    next.reserve(syms.size());
    for (std::size_t i = 0; i < syms.size();) {
      if (i + 1 < syms.size() && syms[i] == left && syms[i + 1] == right) {
        next.push_back(left + right);
        i += 2;
      } else {
        next.push_back(std::move(syms[i]));
        i += 1;
      }
    }
    syms.swap(next);
  }
  return syms;
}

std::vector<std::string> apply_bpe_word(const std::string& word, const MergeTable& table) {
  return apply_bpe_word(word, MergeRanks(table));
}

TokenizedSentence tokenize_bpe(const std::string& sentence, const MergeRanks& ranks,
                               const BpeConfig& cfg) {
  TokenizedSentence ts{Scheme::Bpe, {}};
  const std::string& marker = cfg.continuation_marker;

  auto emit_unit = [&](const std::string& unit) {
    if (unit.size() >= marker.size() &&
        unit.compare(unit.size() - marker.size(), marker.size(), marker) == 0) {
      throw MarkerCollision("word ends with the continuation marker '" + marker + "': " + unit);
    }
    std::vector<std::string> subwords = apply_bpe_word(unit, ranks);
    if (cfg.pretokenize && subwords.size() > 1 && subwords.size() == utf8::length(unit)) {
      // No merge touched this piece. The table carries no segmentation
      // evidence for it, and the table-style output this mode reproduces
      // keeps such words whole ("to", "you") rather than char-split.
      ts.tokens.push_back(unit);
      return;
    }
    for (std::size_t i = 0; i < subwords.size(); ++i) {
      if (i + 1 < subwords.size())
        ts.tokens.push_back(subwords[i] + marker);
      else
        ts.tokens.push_back(std::move(subwords[i]));
    }
  };

  for (const std::string& word : split_ws(sentence)) {
    if (cfg.pretokenize) {
      for (const std::string& piece : rule_segment(word)) emit_unit(piece);
    } else {
      emit_unit(word);
    }
  }
  return ts;
}

namespace {

bool left_attaches(const std::string& token) {
  if (token.empty()) return false;
  switch (token[0]) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case ')': case ']': case '}':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string detokenize_bpe(const TokenizedSentence& ts, const BpeConfig& cfg,
                           bool* trailing_marker_stripped) {
  if (trailing_marker_stripped) *trailing_marker_stripped = false;
  const std::string& marker = cfg.continuation_marker;

  std::string out;
  bool glue_next = true;  // no space before the first token
  for (std::size_t t = 0; t < ts.tokens.size(); ++t) {
    const std::string& token = ts.tokens[t];
    bool continues = token.size() >= marker.size() &&
                     token.compare(token.size() - marker.size(), marker.size(), marker) == 0;
    if (!glue_next && !(cfg.pretokenize && left_attaches(token))) out.push_back(' ');
    if (continues) {
      out.append(token, 0, token.size() - marker.size());
      if (t + 1 == ts.tokens.size() && trailing_marker_stripped)
        *trailing_marker_stripped = true;
    } else {
      out += token;
    }
    glue_next = continues;
  }
  return out;
}

std::string serialize_merges(const MergeTable& table) {
  std::string out = "#merges v1\n";
  for (std::size_t i = 0; i < table.merges.size(); ++i) {
    const auto& [l, r] = table.merges[i];
    for (const std::string* sym : {&l, &r}) {
      if (sym->empty() || sym->find(' ') != std::string::npos ||
          sym->find('\n') != std::string::npos)
        throw FormatError("symbol not representable in a merge table: '" + *sym + "'", i + 2);
    }
    out += l;
    out.push_back(' ');
    out += r;
    out.push_back('\n');
  }
  return out;
}

MergeTable parse_merges(std::string_view text) {
  if (text.empty()) throw FormatError("empty merge table file");
  if (text.back() != '\n') throw FormatError("merge table must end with a newline");
  if (text.find('\r') != std::string_view::npos)
    throw FormatError("merge table must use LF line endings");

  MergeTable table;
  std::map<std::string, std::size_t> seen;  // "l r" -> line
  std::map<std::string, bool> produced;     // symbols derivable from earlier merges
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;

    if (line_no == 1) {
      if (line != "#merges v1")
        throw FormatError("expected '#merges v1' header, got: " + line, line_no);
      continue;
    }
    std::size_t sp = line.find(' ');
    if (line.empty() || sp == std::string::npos || sp != line.rfind(' ') || sp == 0 ||
        sp + 1 == line.size())
      throw FormatError("expected '<left> <right>': " + line, line_no);

    std::string left = line.substr(0, sp);
    std::string right = line.substr(sp + 1);
    if (seen.count(line)) throw FormatError("duplicate merge pair: " + line, line_no);
    seen.emplace(line, line_no);

    for (const std::string* sym : {&left, &right}) {
      if (utf8::length(*sym) != 1 && !produced.count(*sym))
        throw FormatError("symbol '" + *sym +
                              "' is neither a single character nor an earlier merge",
                          line_no);
    }
    produced[left + right] = true;
    table.merges.emplace_back(std::move(left), std::move(right));
  }
  return table;
}

void save_merges(const MergeTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << serialize_merges(table);
  if (!out) throw Error("write failed: " + path);
}

MergeTable load_merges(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_merges(buf.str());
}

}  // namespace subtok::bpe
