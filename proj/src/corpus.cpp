#include "subtok/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "subtok/shuffle.hpp"

namespace subtok::corpus {

std::string normalize_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string out;
  out.reserve(line.size());
  bool pending_space = false;
  for (char c : line) {
    if (c == ' ' || c == '\t') {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> read_lines(std::istream& in, bool normalize) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (normalize) {
      lines.push_back(normalize_line(line));
    } else {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  return lines;
}

std::vector<std::string> read_lines_file(const std::string& path, bool normalize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  return read_lines(in, normalize);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const std::string& line : lines) out << line << '\n';
  if (!out) throw Error("write failed: " + path);
}

ParallelCorpus read_parallel(const std::string& source_path, const std::string& target_path) {
  ParallelCorpus pc;
  pc.source = read_lines_file(source_path, /*normalize=*/true);
  pc.target = read_lines_file(target_path, /*normalize=*/true);
  pc.source_path = source_path;
  pc.target_path = target_path;
  if (pc.source.size() != pc.target.size()) {
    throw LengthMismatch(source_path + " has " + std::to_string(pc.source.size()) +
                         " lines but " + target_path + " has " +
                         std::to_string(pc.target.size()));
  }
  return pc;
}

ParallelCorpus read_parallel_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  ParallelCorpus pc;
  pc.source_path = path;
  pc.target_path = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError("expected 'source<TAB>target'", line_no);
    pc.source.push_back(normalize_line(std::string_view(line).substr(0, tab)));
    pc.target.push_back(normalize_line(std::string_view(line).substr(tab + 1)));
  }
  return pc;
}

namespace {

std::array<std::int64_t, 3> parse_three(const std::string& text, char sep, const char* what) {
  std::array<std::int64_t, 3> parts{};
  std::istringstream ss(text);
  std::string field;
  int i = 0;
  while (std::getline(ss, field, sep)) {
    if (i >= 3) throw BadSpec(std::string("too many parts in ") + what + ": " + text);
    try {
      std::size_t used = 0;
      parts[i] = std::stoll(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw BadSpec(std::string("bad number in ") + what + ": " + text);
    }
    ++i;
  }
  if (i != 3) throw BadSpec(std::string("expected three parts in ") + what + ": " + text);
  return parts;
}

}  // namespace

SplitSpec SplitSpec::from_ratio_string(const std::string& text, std::uint64_t seed) {
  SplitSpec spec;
  spec.mode = Mode::Ratio;
  spec.ratio = parse_three(text, ':', "ratio");
  spec.seed = seed;
  for (std::int64_t part : spec.ratio) {
    if (part <= 0) throw BadSpec("ratio parts must be positive: " + text);
  }
  return spec;
}

SplitSpec SplitSpec::from_counts_string(const std::string& text, std::uint64_t seed) {
  SplitSpec spec;
  spec.mode = Mode::Counts;
  spec.counts = parse_three(text, ',', "counts");
  spec.seed = seed;
  for (std::int64_t part : spec.counts) {
    if (part < 0) throw BadSpec("counts must be non-negative: " + text);
  }
  return spec;
}

std::string SplitSpec::describe() const {
  if (mode == Mode::Ratio) {
    return "ratio " + std::to_string(ratio[0]) + ":" + std::to_string(ratio[1]) + ":" +
           std::to_string(ratio[2]);
  }
  return "counts " + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
         std::to_string(counts[2]);
}

SplitSizes split_sizes(std::int64_t n, const SplitSpec& spec) {
  if (spec.mode == SplitSpec::Mode::Counts) {
    const auto& c = spec.counts;
    if (c[0] + c[1] + c[2] != n) {
      throw BadSpec("counts " + std::to_string(c[0]) + "+" + std::to_string(c[1]) + "+" +
                    std::to_string(c[2]) + " do not sum to corpus size " + std::to_string(n));
    }
    return {c[0], c[1], c[2]};
  }

  if (n < 3) throw BadSpec("ratio split needs at least 3 lines, got " + std::to_string(n));
  for (std::int64_t part : spec.ratio) {
    if (part <= 0) throw BadSpec("ratio parts must be positive");
  }
  const std::int64_t total = spec.ratio[0] + spec.ratio[1] + spec.ratio[2];

  std::array<std::int64_t, 3> base{};
  std::array<std::int64_t, 3> remainder{};
  std::int64_t allocated = 0;
  for (int i = 0; i < 3; ++i) {
    base[i] = n * spec.ratio[i] / total;
    remainder[i] = n * spec.ratio[i] % total;
    if (base[i] == 0) base[i] = 1;  // every part gets at least one line
    allocated += base[i];
  }

  if (allocated < n) {
    // Hand out the leftover by largest remainder, ties to the earlier part.
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
      return a < b;
    });
    for (int k = 0; allocated < n; ++k, ++allocated) base[order[k % 3]] += 1;
  }
  while (allocated > n) {
    // The minimum-one lift over-allocated; take it back from the largest
    // reducible part.
    int victim = -1;
    for (int i = 0; i < 3; ++i) {
      if (base[i] > 1 && (victim < 0 || base[i] > base[victim])) victim = i;
    }
    if (victim < 0) throw BadSpec("cannot apportion " + std::to_string(n) + " lines at " + spec.describe());
    base[victim] -= 1;
    --allocated;
  }
  return {base[0], base[1], base[2]};
}

SplitIndices split_corpus(std::int64_t n, const SplitSpec& spec) {
  SplitSizes sizes = split_sizes(n, spec);
  std::vector<std::int64_t> perm = rng::seeded_permutation(n, spec.seed);
  SplitIndices out;
  auto it = perm.begin();
  out.train.assign(it, it + sizes.train);
  it += sizes.train;
  out.valid.assign(it, it + sizes.valid);
  it += sizes.valid;
  out.test.assign(it, it + sizes.test);
  return out;
}

VocabReport vocab_stats(const std::vector<std::string>& token_lines) {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const std::string& line : token_lines) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) {
        ++counts[line.substr(start, i - start)];
        ++total;
      }
    }
  }
  VocabReport report;
  report.unique_tokens = static_cast<std::int64_t>(counts.size());
  report.total_tokens = total;
  report.frequencies.assign(counts.begin(), counts.end());
  std::stable_sort(report.frequencies.begin(), report.frequencies.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return report;
}

}  // namespace subtok::corpus
