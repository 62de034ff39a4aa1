#pragma once

#include <vector>

#include "extsum/corpus.hpp"
#include "extsum/rouge.hpp"

namespace extsum {

struct OracleResult {
  ExtractiveLabels labels;  // order holds the greedy pick sequence
  double objective = 0.0;   // Rouge of the final selection against the gold summary
};

// Greedy pseudo-labeling: repeatedly add the sentence that most improves the
// Rouge objective of the selected set, joined in document order, against the
// whole gold summary. Stops when no sentence strictly improves the score or
// the budget is reached. Ties go to the lower index.
OracleResult greedy_extractive_labels(const std::vector<std::vector<std::string>>& sentences,
                                      const std::vector<std::string>& gold,
                                      const LengthBudget& budget,
                                      RougeVariant objective = RougeVariant::kMean12);

struct ExhaustiveResult {
  std::vector<std::size_t> indices;  // ascending
  double objective = 0.0;
};

// True optimum over all subsets of at most k sentences. Guarded to tiny
// inputs; ties resolve to the lexicographically smallest index set.
ExhaustiveResult exhaustive_oracle(const std::vector<std::vector<std::string>>& sentences,
                                   const std::vector<std::string>& gold, std::size_t k,
                                   RougeVariant objective = RougeVariant::kMean12);

struct LabelStats {
  std::size_t documents = 0;
  std::size_t empty_selections = 0;
  double mean_selected = 0.0;   // over all documents
  double mean_objective = 0.0;  // over all documents
};

// Attaches greedy labels to every document in place. All documents need a
// gold summary.
LabelStats label_corpus(Corpus& corpus, const LengthBudget& budget,
                        RougeVariant objective = RougeVariant::kMean12);

}  // namespace extsum
