// Benchmark harness: times the OpenMP kernels against their serial
// references (asserting exact equality) and reports the BPE learn/apply
// throughput targets. Soft targets: misses are reported, never fatal.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "subtok/bleu.hpp"
#include "subtok/bpe.hpp"
#include "subtok/bpe_reference.hpp"
#include "subtok/line_tokenizer.hpp"
#include "subtok/shuffle.hpp"
#include "subtok/utf8.hpp"

using namespace subtok;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Zipf-flavored synthetic corpus: a pool of mixed Hangul/ASCII words drawn
// with a skewed distribution, roughly target_chars characters in total.
std::vector<std::string> synthetic_corpus(std::size_t target_chars, std::uint64_t seed) {
  rng::SplitMix64 gen(seed);
  std::vector<std::string> pool;
  pool.reserve(60000);
  for (int i = 0; i < 60000; ++i) {
    std::string word;
    std::size_t len = 2 + gen.bounded(9);
    bool hangul = gen.bounded(2) == 0;
    for (std::size_t k = 0; k < len; ++k) {
      if (hangul)
        utf8::append(word, static_cast<char32_t>(0xAC00 + gen.bounded(11172)));
      else
        word.push_back(static_cast<char>('a' + gen.bounded(26)));
    }
    pool.push_back(std::move(word));
  }

  std::vector<std::string> lines;
  std::size_t chars = 0;
  while (chars < target_chars) {
    std::string line;
    std::size_t words = 5 + gen.bounded(15);
    for (std::size_t w = 0; w < words; ++w) {
      if (w) line.push_back(' ');
      // Cubing the uniform draw skews toward the front of the pool.
      double u = static_cast<double>(gen.next() >> 11) / 9007199254740992.0;
      std::size_t index = static_cast<std::size_t>(u * u * u * pool.size());
      line += pool[index < pool.size() ? index : pool.size() - 1];
    }
    chars += utf8::length(line);
    lines.push_back(std::move(line));
  }
  return lines;
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("  %-28s serial %8.3f s   openmp %8.3f s   speedup %5.2fx   %s\n", name, serial_s,
              parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
              equal ? "results identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subtok benchmark harness"};
  std::size_t target_chars = 5'000'000;
  std::int64_t num_merges = 10'000;
  bool quick = false;
  app.add_option("--chars", target_chars, "Synthetic corpus size in characters");
  app.add_option("--merges", num_merges, "Merges to learn");
  app.add_flag("--quick", quick, "Small sizes for a fast smoke run");
  CLI11_PARSE(app, argc, argv);

  if (quick) {
    target_chars = 200'000;
    num_merges = 500;
  }

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: not available (serial build)\n");
#endif

  std::printf("generating ~%zu-char corpus...\n", target_chars);
  std::vector<std::string> lines = synthetic_corpus(target_chars, 1);
  bpe::WordFrequencyMap wf = bpe::count_words(lines, false);
  bpe::SymbolCorpus symbols = bpe::to_symbol_corpus(wf);
  std::size_t total_words = 0;
  for (const auto& [word, freq] : wf) total_words += static_cast<std::size_t>(freq);
  std::printf("corpus: %zu lines, %zu word tokens, %zu unique words\n\n", lines.size(),
              total_words, wf.size());

  std::printf("parallel kernels vs serial references\n");
  {
    auto t0 = Clock::now();
    bpe::PairCounts serial = bpe::count_pairs(symbols);
    double s = seconds_since(t0);
    t0 = Clock::now();
    bpe::PairCounts parallel = bpe::count_pairs_parallel(symbols);
    double p = seconds_since(t0);
    report("count_pairs", s, p, serial == parallel);
  }
  {
    LineTokenizer tok = LineTokenizer::alphabet({});
    auto t0 = Clock::now();
    std::vector<std::string> serial = tokenize_lines_serial(lines, tok);
    double s = seconds_since(t0);
    t0 = Clock::now();
    std::vector<std::string> parallel = tokenize_lines(lines, tok);
    double p = seconds_since(t0);
    report("tokenize_lines (alphabet)", s, p, serial == parallel);
  }
  {
    std::vector<bleu::Tokens> hyps = bleu::tokenize_lines(lines);
    std::vector<std::vector<bleu::Tokens>> refs;
    refs.reserve(hyps.size());
    for (std::size_t i = 0; i < hyps.size(); ++i)
      refs.push_back({hyps[(i + 1) % hyps.size()]});
    auto t0 = Clock::now();
    bleu::BleuReport serial = bleu::bleu_corpus_serial(hyps, refs);
    double s = seconds_since(t0);
    t0 = Clock::now();
    bleu::BleuReport parallel = bleu::bleu_corpus(hyps, refs);
    double p = seconds_since(t0);
    report("bleu_corpus", s, p, serial.machine_line() == parallel.machine_line());
  }

  std::printf("\nBPE learner\n");
  bpe::BpeConfig cfg;
  cfg.num_merges = num_merges;
  cfg.min_pair_frequency = 2;
  auto t0 = Clock::now();
  bpe::MergeTable table = bpe::learn_bpe(wf, cfg);
  double learn_s = seconds_since(t0);
  std::printf("  incremental learner: %zu merges in %.2f s  [target < 60 s: %s]\n", table.size(),
              learn_s, learn_s < 60.0 ? "ok" : "MISSED (soft)");

  {
    // Naive reference on a reduced setting; it recounts every pair per merge.
    bpe::WordFrequencyMap small_wf;
    std::size_t budget = 4000;
    for (const auto& [word, freq] : wf) {
      small_wf[word] = freq;
      if (--budget == 0) break;
    }
    bpe::BpeConfig small_cfg;
    small_cfg.num_merges = std::min<std::int64_t>(num_merges, 300);
    small_cfg.min_pair_frequency = 2;
    t0 = Clock::now();
    bpe::MergeTable fast = bpe::learn_bpe(small_wf, small_cfg);
    double fast_s = seconds_since(t0);
    t0 = Clock::now();
    bpe::MergeTable naive = bpe::reference::learn_bpe(small_wf, small_cfg);
    double naive_s = seconds_since(t0);
    std::printf("  vs naive recount (%lld merges, %zu words): incremental %.3f s, naive %.3f s, "
                "speedup %.1fx, %s\n",
                static_cast<long long>(small_cfg.num_merges), small_wf.size(), fast_s, naive_s,
                fast_s > 0 ? naive_s / fast_s : 0.0,
                fast == naive ? "tables identical" : "TABLE MISMATCH");
  }

  std::printf("\nBPE application (single thread)\n");
  {
    bpe::MergeRanks ranks(table);
    std::vector<std::string> word_stream;
    word_stream.reserve(total_words);
    for (const auto& [word, freq] : wf) {
      for (std::int64_t k = 0; k < freq; ++k) word_stream.push_back(word);
    }
    t0 = Clock::now();
    std::size_t emitted = 0;
    for (const std::string& word : word_stream) emitted += bpe::apply_bpe_word(word, ranks).size();
    double apply_s = seconds_since(t0);
    double wps = apply_s > 0 ? static_cast<double>(word_stream.size()) / apply_s : 0.0;
    std::printf("  applied %zu-merge table to %zu words in %.2f s: %.0f words/s "
                "(%zu subwords)  [target >= 50000 words/s: %s]\n",
                table.size(), word_stream.size(), apply_s, wps, emitted,
                wps >= 50000.0 ? "ok" : "MISSED (soft)");
  }
  return 0;
}
