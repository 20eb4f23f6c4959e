#pragma once

#include <stdexcept>
#include <string>

namespace subtok {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A character outside the precomposed Hangul syllable block was passed to
// decompose_syllable. Callers that stream text are expected to test
// is_hangul_syllable first and pass other characters through.
class NotHangulSyllable : public Error {
public:
  using Error::Error;
};

// Input already contains the space marker (or a word ends with the BPE
// continuation marker) and the configuration rejects such input.
class MarkerCollision : public Error {
public:
  using Error::Error;
};

// An external segmenter process misbehaved: failed to start, exited,
// timed out, or replied with a malformed protocol line.
class SegmenterFailure : public Error {
public:
  using Error::Error;
};

// A structured file (merge table, TSV corpus, pipeline config) is malformed.
// line() is 1-based; 0 means the error is not tied to a specific line.
class FormatError : public Error {
public:
  FormatError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        message_(msg),
        line_(line) {}
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

private:
  std::string message_;
  std::size_t line_;
};

// Aligned inputs (hypothesis/reference corpora, source/target files) have
// different lengths.
class LengthMismatch : public Error {
public:
  using Error::Error;
};

class EmptyCorpus : public Error {
public:
  using Error::Error;
};

// A split specification cannot be applied to the corpus at hand.
class BadSpec : public Error {
public:
  using Error::Error;
};

}  // namespace subtok
