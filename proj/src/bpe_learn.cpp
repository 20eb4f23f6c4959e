#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_set>

#include "subtok/bpe.hpp"
#include "subtok/utf8.hpp"

namespace subtok::bpe {

namespace {

// Incremental learner working set. Symbols are interned; pairs are packed
// into one 64-bit key; a lazy max-heap holds (count, pair) entries that are
// validated against the live count map when popped. Ties on count break by
// lexicographic order of the pair's UTF-8 text, smallest first.
class Learner {
public:
  Learner(const WordFrequencyMap& wf, const BpeConfig& cfg) : cfg_(cfg) {
    words_.reserve(wf.size());
    for (const auto& [word, freq] : wf) {
      Word w;
      w.freq = freq;
      for (char32_t cp : utf8::decode(word)) w.syms.push_back(intern(utf8::encode(cp)));
      words_.push_back(std::move(w));
    }
    for (std::size_t wi = 0; wi < words_.size(); ++wi) add_word_pairs(wi);
    for (const auto& [key, count] : counts_) heap_.push(Entry{count, key});
  }

  MergeTable run() {
    MergeTable table;
    const std::int64_t threshold = std::max<std::int64_t>(cfg_.min_pair_frequency, 1);
    while (static_cast<std::int64_t>(table.merges.size()) < cfg_.num_merges) {
      Entry best;
      if (!pop_valid(best)) break;
      if (best.count < threshold) break;

      auto [left, right] = unpack(best.key);
      table.merges.emplace_back(symtext_[left], symtext_[right]);
      merge(left, right);
    }
    return table;
  }

  std::vector<std::string> word_symbols(std::size_t wi) const {
    std::vector<std::string> out;
    out.reserve(words_[wi].syms.size());
    for (int s : words_[wi].syms) out.push_back(symtext_[s]);
    return out;
  }

  std::size_t word_count() const { return words_.size(); }

private:
  struct Word {
    std::vector<int> syms;
    std::int64_t freq;
  };

  struct Entry {
    std::int64_t count;
    std::uint64_t key;
  };

  struct EntryLess {
    const Learner* learner;
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.count != b.count) return a.count < b.count;
      auto [al, ar] = unpack(a.key);
      auto [bl, br] = unpack(b.key);
      int c = learner->symtext_[al].compare(learner->symtext_[bl]);
      if (c != 0) return c > 0;  // smaller left text wins
      return learner->symtext_[ar].compare(learner->symtext_[br]) > 0;
    }
  };

  static std::uint64_t pack(int left, int right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
           static_cast<std::uint32_t>(right);
  }
  static std::pair<int, int> unpack(std::uint64_t key) {
    return {static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu)};
  }

  int intern(std::string text) {
    auto it = symid_.find(text);
    if (it != symid_.end()) return it->second;
    int id = static_cast<int>(symtext_.size());
    symid_.emplace(text, id);
    symtext_.push_back(std::move(text));
    return id;
  }

  // Counts every adjacent pair of word wi (position-based, weighted by its
  // frequency) and records wi under each pair for later rewriting.
  void add_word_pairs(std::size_t wi) {
    const Word& w = words_[wi];
    for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
      std::uint64_t key = pack(w.syms[i], w.syms[i + 1]);
      counts_[key] += w.freq;
      where_[key].push_back(wi);
    }
  }

  bool pop_valid(Entry& out) {
    while (!heap_.empty()) {
      Entry e = heap_.top();
      heap_.pop();
      auto it = counts_.find(e.key);
      if (it != counts_.end() && it->second == e.count) {
        out = e;
        return true;
      }
    }
    return false;
  }

  void merge(int left, int right) {
    const std::uint64_t key = pack(left, right);
    const int merged = intern(symtext_[left] + symtext_[right]);

    std::vector<std::size_t> touched;
    if (auto it = where_.find(key); it != where_.end()) {
      touched = std::move(it->second);
      where_.erase(it);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::unordered_set<std::uint64_t> dirty;
    std::vector<int> next;
    for (std::size_t wi : touched) {
      Word& w = words_[wi];
      bool present = false;
      for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
        if (w.syms[i] == left && w.syms[i + 1] == right) {
          present = true;
          break;
        }
      }
      if (!present) continue;  // stale index from an earlier rewrite

      // Retract the word's old pair counts, rewrite left-to-right without
      // overlap, then count the new sequence. Recounting the whole word is
      // exact for overlapping runs like "aaa".
      for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
        std::uint64_t k = pack(w.syms[i], w.syms[i + 1]);
        auto it = counts_.find(k);
        assert(it != counts_.end());
        it->second -= w.freq;
        dirty.insert(k);
        if (it->second == 0) counts_.erase(it);
      }
      next.clear();
      next.reserve(w.syms.size());
      for (std::size_t i = 0; i < w.syms.size();) {
        if (i + 1 < w.syms.size() && w.syms[i] == left && w.syms[i + 1] == right) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(w.syms[i]);
          i += 1;
        }
      }
      w.syms.swap(next);
      for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
        std::uint64_t k = pack(w.syms[i], w.syms[i + 1]);
        counts_[k] += w.freq;
        dirty.insert(k);
        where_[k].push_back(wi);
      }
    }

    assert(!counts_.count(key));
    dirty.erase(key);
    for (std::uint64_t k : dirty) {
      if (auto it = counts_.find(k); it != counts_.end()) heap_.push(Entry{it->second, k});
    }
  }

  BpeConfig cfg_;
  std::vector<std::string> symtext_;
  std::unordered_map<std::string, int> symid_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> where_;
  std::priority_queue<Entry, std::vector<Entry>, EntryLess> heap_{EntryLess{this}};
};

}  // namespace

MergeTable learn_bpe(const WordFrequencyMap& wf, const BpeConfig& cfg) {
  if (wf.empty()) return {};
  return Learner(wf, cfg).run();
}

LearnResult learn_bpe_full(const WordFrequencyMap& wf, const BpeConfig& cfg) {
  LearnResult result;
  if (wf.empty()) return result;
  Learner learner(wf, cfg);
  result.table = learner.run();
  std::size_t wi = 0;
  for (const auto& [word, freq] : wf) result.final_words[word] = learner.word_symbols(wi++);
  return result;
}

}  // namespace subtok::bpe
