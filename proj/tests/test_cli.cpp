#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "subtok/sha256.hpp"
#include "testutil.hpp"

// End-to-end tests of the subtok binary; its path arrives via SUBTOK_BIN.

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const std::string& binary() {
  static const std::string bin = [] {
    const char* env = std::getenv("SUBTOK_BIN");
    REQUIRE_MESSAGE(env != nullptr, "SUBTOK_BIN must point at the subtok binary");
    return std::string(env);
  }();
  return bin;
}

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  testutil::TempDir dir("cli-run");
  std::string in_file = dir.file("stdin");
  {
    std::ofstream f(in_file, std::ios::binary);
    f << stdin_text;
  }
  std::string out_file = dir.file("stdout");
  std::string err_file = dir.file("stderr");
  std::string cmd =
      binary() + " " + args + " < " + in_file + " > " + out_file + " 2> " + err_file;
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = testutil::slurp(out_file);
  r.err = testutil::slurp(err_file);
  return r;
}

}  // namespace

TEST_CASE("cli: tokenize golden lines") {
  RunResult r = run("tokenize --scheme morpheme --segmenter rule", "nice to meet you.\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "nice ▁ to ▁ meet ▁ you .\n");
  CHECK(r.err.empty());

  r = run("tokenize --scheme alphabet", "안녕하세요.\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "ㅇ ㅏ ㄴ ㄴ ㅕ ㅇ ㅎ ㅏ ㅅ ㅔ ㅇ ㅛ .\n");

  r = run("tokenize --scheme alphabet", "");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("cli: bpe golden line with the four-merge table") {
  testutil::TempDir dir("cli-bpe");
  {
    std::ofstream f(dir.file("m.bpe"), std::ios::binary);
    f << "#merges v1\nm e\ne t\nn i\nc e\n";
  }
  RunResult r = run("tokenize --scheme bpe --merges " + dir.file("m.bpe") + " --pretok",
                    "nice to meet you.\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "ni@@ ce to me@@ et you .\n");
}

TEST_CASE("cli: tokenize/detokenize file round trip for all schemes") {
  testutil::TempDir dir("cli-rt");
  testutil::SplitMix64 gen(2024);
  std::vector<std::string> lines;
  for (int i = 0; i < 200; ++i) lines.push_back(testutil::random_sentence(gen));
  std::string text;
  for (const auto& l : lines) text += l + "\n";

  SUBCASE("alphabet") {
    RunResult tok = run("tokenize --scheme alphabet", text);
    REQUIRE(tok.exit_code == 0);
    RunResult detok = run("detokenize --scheme alphabet", tok.out);
    REQUIRE(detok.exit_code == 0);
    CHECK(detok.out == text);
  }
  SUBCASE("morpheme with identity external segmenter") {
    RunResult tok = run("tokenize --scheme morpheme --segmenter exec:cat", text);
    REQUIRE(tok.exit_code == 0);
    RunResult detok = run("detokenize --scheme morpheme", tok.out);
    REQUIRE(detok.exit_code == 0);
    CHECK(detok.out == text);
  }
  SUBCASE("raw-mode bpe with a learned table") {
    std::ofstream(dir.file("corpus.txt"), std::ios::binary) << text;
    RunResult learn = run("learn-bpe " + dir.file("corpus.txt") + " " + dir.file("t.bpe") +
                          " --merges 60 --min-freq 0");
    REQUIRE(learn.exit_code == 0);
    RunResult tok = run("tokenize --scheme bpe --merges " + dir.file("t.bpe"), text);
    REQUIRE(tok.exit_code == 0);
    RunResult detok = run("detokenize --scheme bpe", tok.out);
    REQUIRE(detok.exit_code == 0);
    CHECK(detok.out == text);
  }
}

TEST_CASE("cli: learn-bpe writes the exact expected table") {
  testutil::TempDir dir("cli-learn");
  std::ofstream(dir.file("c.txt"), std::ios::binary) << "aaab aaab ab\n";
  RunResult r = run("learn-bpe " + dir.file("c.txt") + " - --merges 2 --min-freq 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "#merges v1\na a\na b\n");
}

TEST_CASE("cli: split is deterministic and honors counts") {
  testutil::TempDir dir("cli-split");
  testutil::SplitMix64 gen(5);
  std::vector<std::string> src, tgt;
  for (int i = 0; i < 50; ++i) {
    src.push_back(testutil::random_sentence(gen));
    tgt.push_back(testutil::random_sentence(gen));
  }
  std::ofstream s(dir.file("s.txt"), std::ios::binary);
  std::ofstream t(dir.file("t.txt"), std::ios::binary);
  for (const auto& l : src) s << l << "\n";
  for (const auto& l : tgt) t << l << "\n";
  s.close();
  t.close();

  std::string base = "split --src " + dir.file("s.txt") + " --tgt " + dir.file("t.txt") +
                     " --ratio 98:1:1 --seed 42 --out ";
  REQUIRE(run(base + dir.file("a")).exit_code == 0);
  REQUIRE(run(base + dir.file("b")).exit_code == 0);

  for (const char* part : {"train", "valid", "test"}) {
    for (const char* side : {"src", "tgt"}) {
      std::string name_a = dir.file("a") + "." + part + "." + side;
      std::string name_b = dir.file("b") + "." + part + "." + side;
      CHECK(subtok::sha256_file_hex(name_a) == subtok::sha256_file_hex(name_b));
    }
  }
  // 50 lines at 98:1:1 -> (48, 1, 1)
  CHECK(testutil::slurp(dir.file("a") + ".valid.src").size() > 0);
  std::string train = testutil::slurp(dir.file("a") + ".train.src");
  CHECK(std::count(train.begin(), train.end(), '\n') == 48);
}

TEST_CASE("cli: bleu identity and error handling") {
  testutil::TempDir dir("cli-bleu");
  std::ofstream(dir.file("h.txt"), std::ios::binary) << "hello world\nthis is a test\n";
  RunResult r = run("bleu " + dir.file("h.txt") + " " + dir.file("h.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 12) == "BLEU=100.00 ");

  std::ofstream(dir.file("short.txt"), std::ios::binary) << "hello world\n";
  r = run("bleu " + dir.file("h.txt") + " " + dir.file("short.txt"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());

  // Token-looking input warns on stderr but still scores.
  std::ofstream(dir.file("tok.txt"), std::ios::binary) << "ni@@ ce\n";
  r = run("bleu " + dir.file("tok.txt") + " " + dir.file("tok.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  r = run("bleu " + dir.file("tok.txt") + " " + dir.file("tok.txt") + " --raw-tokens");
  CHECK(r.err.empty());
}

TEST_CASE("cli: stats") {
  RunResult r = run("stats -", "a b\na\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "unique=2 total=3\na\t2\nb\t1\n");
  r = run("stats - --summary", "a b\na\n");
  CHECK(r.out == "unique=2 total=3\n");
}

TEST_CASE("cli: exit codes and stream hygiene") {
  // Usage errors: 2.
  CHECK(run("tokenize --scheme nope").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("tokenize --scheme bpe").exit_code == 2);  // missing --merges

  // Data errors: 1, with a line number on stderr.
  RunResult r = run("tokenize --scheme alphabet", "fine\nbad ▁ here\n");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("line 2") != std::string::npos);

  testutil::TempDir dir("cli-bad");
  std::ofstream(dir.file("bad.bpe"), std::ios::binary) << "#wrong\n";
  r = run("tokenize --scheme bpe --merges " + dir.file("bad.bpe"), "x\n");
  CHECK(r.exit_code == 1);

  // Warnings go to stderr only; payload stays clean.
  r = run("detokenize --scheme bpe", "x a@@\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "x a\n");
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("cli: pipeline runs from a JSON config") {
  testutil::TempDir dir("cli-pipe");
  testutil::SplitMix64 gen(9);
  std::ofstream s(dir.file("s.txt"), std::ios::binary);
  std::ofstream t(dir.file("t.txt"), std::ios::binary);
  for (int i = 0; i < 30; ++i) {
    s << testutil::random_sentence(gen) << "\n";
    t << testutil::random_sentence(gen) << "\n";
  }
  s.close();
  t.close();
  std::ofstream(dir.file("cfg.json"), std::ios::binary)
      << "{\"source\":\"" << dir.file("s.txt") << "\",\"target\":\"" << dir.file("t.txt")
      << "\",\"out_dir\":\"" << dir.file("out")
      << "\",\"seed\":3,\"split\":{\"ratio\":\"98:1:1\"},"
         "\"source_tokenizer\":{\"scheme\":\"bpe\",\"num_merges\":30,\"min_pair_frequency\":0},"
         "\"target_tokenizer\":{\"scheme\":\"morpheme\"}}";

  RunResult r = run("pipeline " + dir.file("cfg.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("#manifest v1") == 0);
  CHECK(std::filesystem::exists(dir.file("out/train.src.tok")));
  CHECK(std::filesystem::exists(dir.file("out/src.merges")));
  CHECK(std::filesystem::exists(dir.file("out/manifest.txt")));
}
