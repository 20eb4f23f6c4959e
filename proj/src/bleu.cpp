#include "subtok/bleu.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace subtok::bleu {

namespace {

struct SentenceStats {
  std::array<std::int64_t, kMaxOrder> matched{};
  std::array<std::int64_t, kMaxOrder> total{};
  std::int64_t c = 0;
  std::int64_t r = 0;

  void operator+=(const SentenceStats& o) {
    for (int n = 0; n < kMaxOrder; ++n) {
      matched[n] += o.matched[n];
      total[n] += o.total[n];
    }
    c += o.c;
    r += o.r;
  }
};

// n-grams keyed as tokens joined with spaces; tokens are whitespace-split so
// the join is unambiguous.
void count_into(const Tokens& tokens, int n, std::unordered_map<std::string, std::int64_t>& out) {
  if (static_cast<int>(tokens.size()) < n) return;
  std::string key;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    key.clear();
    for (int j = 0; j < n; ++j) {
      if (j) key.push_back(' ');
      key += tokens[i + j];
    }
    ++out[key];
  }
}

std::int64_t effective_ref_length(std::int64_t hyp_len, const std::vector<Tokens>& refs) {
  std::int64_t best_len = 0;
  std::int64_t best_diff = -1;
  for (const Tokens& ref : refs) {
    auto len = static_cast<std::int64_t>(ref.size());
    std::int64_t diff = std::abs(len - hyp_len);
    if (best_diff < 0 || diff < best_diff || (diff == best_diff && len < best_len)) {
      best_diff = diff;
      best_len = len;
    }
  }
  return best_len;
}

SentenceStats sentence_stats(const Tokens& hyp, const std::vector<Tokens>& refs) {
  SentenceStats s;
  s.c = static_cast<std::int64_t>(hyp.size());
  s.r = effective_ref_length(s.c, refs);

  std::unordered_map<std::string, std::int64_t> hyp_counts, ref_max, ref_counts;
  for (int n = 1; n <= kMaxOrder; ++n) {
    hyp_counts.clear();
    count_into(hyp, n, hyp_counts);
    ref_max.clear();
    for (const Tokens& ref : refs) {
      ref_counts.clear();
      count_into(ref, n, ref_counts);
      for (const auto& [gram, cnt] : ref_counts) {
        auto& m = ref_max[gram];
        if (cnt > m) m = cnt;
      }
    }
    for (const auto& [gram, cnt] : hyp_counts) {
      auto it = ref_max.find(gram);
      if (it != ref_max.end()) s.matched[n - 1] += std::min(cnt, it->second);
      s.total[n - 1] += cnt;
    }
  }
  return s;
}

void validate(const std::vector<Tokens>& hyps, const std::vector<std::vector<Tokens>>& refs) {
  if (hyps.size() != refs.size())
    throw LengthMismatch("hypothesis count " + std::to_string(hyps.size()) +
                         " != reference count " + std::to_string(refs.size()));
  if (hyps.empty()) throw EmptyCorpus("empty corpus");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].empty())
      throw EmptyCorpus("sentence " + std::to_string(i + 1) + " has no references");
  }
}

BleuReport assemble(const SentenceStats& agg, const Smoothing& smoothing) {
  BleuReport report;
  for (int n = 0; n < kMaxOrder; ++n) {
    report.precisions[n].matched = agg.matched[n];
    report.precisions[n].total = agg.total[n];
  }
  report.candidate_length = agg.c;
  report.reference_length = agg.r;
  report.brevity_penalty = agg.r > 0 ? brevity_penalty(agg.c, agg.r) : (agg.c > 0 ? 1.0 : 0.0);

  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < kMaxOrder; ++n) {
    double m = static_cast<double>(agg.matched[n]);
    double t = static_cast<double>(agg.total[n]);
    if (t <= 0.0) continue;  // the corpus has no n-grams of this order
    if (smoothing.kind == Smoothing::Kind::AddEpsilon) {
      m += smoothing.epsilon;
      t += smoothing.epsilon;
    }
    if (m <= 0.0) {
      zero = true;
      break;
    }
    log_sum += std::log(m / t) / kMaxOrder;
  }
  report.score = zero ? 0.0 : 100.0 * report.brevity_penalty * std::exp(log_sum);
  return report;
}

}  // namespace

NgramCounts ngram_counts(const Tokens& tokens, int n) {
  NgramCounts counts;
  if (n < 1 || static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

Precision modified_precision(const std::vector<Tokens>& hyps,
                             const std::vector<std::vector<Tokens>>& refs, int n) {
  validate(hyps, refs);
  Precision p;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    SentenceStats s = sentence_stats(hyps[i], refs[i]);
    p.matched += s.matched[n - 1];
    p.total += s.total[n - 1];
  }
  return p;
}

double brevity_penalty(std::int64_t c, std::int64_t r) {
  if (c == 0) return 0.0;
  if (c >= r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

BleuReport bleu_corpus_serial(const std::vector<Tokens>& hyps,
                              const std::vector<std::vector<Tokens>>& refs,
                              const Smoothing& smoothing) {
  validate(hyps, refs);
  SentenceStats agg;
  for (std::size_t i = 0; i < hyps.size(); ++i) agg += sentence_stats(hyps[i], refs[i]);
  return assemble(agg, smoothing);
}

BleuReport bleu_corpus(const std::vector<Tokens>& hyps,
                       const std::vector<std::vector<Tokens>>& refs,
                       const Smoothing& smoothing) {
  validate(hyps, refs);
  SentenceStats agg;
#ifdef _OPENMP
  #pragma omp parallel
  {
    SentenceStats local;
    #pragma omp for nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(hyps.size()); ++i) {
      local += sentence_stats(hyps[i], refs[i]);
    }
    #pragma omp critical(subtok_bleu_merge)
    agg += local;
  }
#else
  for (std::size_t i = 0; i < hyps.size(); ++i) agg += sentence_stats(hyps[i], refs[i]);
#endif
  return assemble(agg, smoothing);
}

std::string BleuReport::machine_line() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "BLEU=%.2f p1=%lld/%lld p2=%lld/%lld p3=%lld/%lld p4=%lld/%lld "
                "BP=%.3f c=%lld r=%lld",
                score, static_cast<long long>(precisions[0].matched),
                static_cast<long long>(precisions[0].total),
                static_cast<long long>(precisions[1].matched),
                static_cast<long long>(precisions[1].total),
                static_cast<long long>(precisions[2].matched),
                static_cast<long long>(precisions[2].total),
                static_cast<long long>(precisions[3].matched),
                static_cast<long long>(precisions[3].total), brevity_penalty,
                static_cast<long long>(candidate_length),
                static_cast<long long>(reference_length));
  return buf;
}

std::string BleuReport::pretty() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "BLEU score        %.2f\n"
                "modified p1..p4   %lld/%lld  %lld/%lld  %lld/%lld  %lld/%lld\n"
                "brevity penalty   %.4f\n"
                "lengths           hyp=%lld  ref=%lld\n",
                score, static_cast<long long>(precisions[0].matched),
                static_cast<long long>(precisions[0].total),
                static_cast<long long>(precisions[1].matched),
                static_cast<long long>(precisions[1].total),
                static_cast<long long>(precisions[2].matched),
                static_cast<long long>(precisions[2].total),
                static_cast<long long>(precisions[3].matched),
                static_cast<long long>(precisions[3].total), brevity_penalty,
                static_cast<long long>(candidate_length),
                static_cast<long long>(reference_length));
  return buf;
}

std::vector<Tokens> tokenize_lines(const std::vector<std::string>& lines) {
  std::vector<Tokens> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) {
    Tokens toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) toks.push_back(line.substr(start, i - start));
    }
    out.push_back(std::move(toks));
  }
  return out;
}

}  // namespace subtok::bleu
