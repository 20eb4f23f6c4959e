#pragma once

#include "subtok/bpe.hpp"

namespace subtok::bpe::reference {

// Naive learner kept as the correctness reference for learn_bpe: recounts
// every pair from scratch each iteration and rewrites words directly. Same
// selection rule (max count, ties to the lexicographically smallest pair)
// and the same stopping conditions, with none of the incremental
// bookkeeping. Quadratic-ish and only meant for tests and the benchmark.
MergeTable learn_bpe(const WordFrequencyMap& wf, const BpeConfig& cfg);

}  // namespace subtok::bpe::reference
