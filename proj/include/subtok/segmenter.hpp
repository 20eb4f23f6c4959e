#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subtok/error.hpp"

namespace subtok {

// A pluggable word segmenter. segment() returns at least one non-empty
// morpheme; when surface_preserving() is true their concatenation equals
// the word exactly, which is what the morpheme round-trip guarantee needs.
class Segmenter {
public:
  virtual ~Segmenter() = default;
  virtual std::vector<std::string> segment(const std::string& word) = 0;
  virtual const std::string& name() const = 0;
  virtual bool surface_preserving() const = 0;
};

// Built-in baseline: splits at letter/digit vs punctuation/symbol run
// boundaries. Always surface preserving.
class RuleSegmenter : public Segmenter {
public:
  std::vector<std::string> segment(const std::string& word) override;
  const std::string& name() const override;
  bool surface_preserving() const override { return true; }
};

// Wraps a child process speaking the line protocol: one word per request
// line on the child's stdin, one reply line with the morphemes joined by
// single TABs on its stdout, flushed per line. An empty reply line is a
// protocol error. The instance is a serial resource: one in-flight request
// at a time; callers needing parallelism create multiple instances.
class ExternalSegmenter : public Segmenter {
public:
  // Launches `command` via /bin/sh -c. Throws SegmenterFailure if the
  // process cannot be started.
  explicit ExternalSegmenter(const std::string& command, int timeout_ms = 5000);
  ~ExternalSegmenter() override;

  ExternalSegmenter(const ExternalSegmenter&) = delete;
  ExternalSegmenter& operator=(const ExternalSegmenter&) = delete;

  std::vector<std::string> segment(const std::string& word) override;
  const std::string& name() const override { return name_; }

  // Verified per call: starts true, latched false the first time a reply's
  // concatenation differs from the word. Such segmenters stay usable but
  // the round-trip guarantee is withdrawn.
  bool surface_preserving() const override { return surface_preserving_; }

private:
  std::string read_reply_line();

  std::string name_;
  int timeout_ms_;
  bool surface_preserving_ = true;
  long pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Builds a segmenter from a CLI-style spec: "rule" for the built-in one,
// "exec:<command>" for an external process.
std::unique_ptr<Segmenter> make_segmenter(const std::string& spec, int timeout_ms = 5000);

}  // namespace subtok
