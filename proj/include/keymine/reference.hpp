#pragma once

// Serial reference versions of the OpenMP kernels. They are kept
// deliberately plain and are what the parallel kernels are tested and
// benchmarked against.

#include "keymine/corpus.hpp"
#include "keymine/evaluation.hpp"
#include "keymine/mining.hpp"

namespace keymine::reference {

NGraphTable count_ngraphs_serial(const LetterStream& stream, int n);

/// Candidate-major subset test, no bucketing.
std::vector<CountedItemset> count_supports_serial(const TransactionDB& db, std::span<const Itemset> candidates);

EvalReport evaluate_serial(const LetterStream& stream, const Layout& layout);

}  // namespace keymine::reference
