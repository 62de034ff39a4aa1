#pragma once

#include <string>
#include <vector>

namespace extsum {

enum class BudgetUnit { kBytes, kWords, kSentences };

struct LengthBudget {
  BudgetUnit unit = BudgetUnit::kBytes;
  std::size_t limit = 0;
};

enum class RougeVariant { kRouge1, kRouge2, kRougeL, kMean12 };

struct RougeScore {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rouge_l = 0.0;

  double variant(RougeVariant v) const;
};

// Lowercases and splits on runs of whitespace. No stemming, no stopword
// removal; punctuation stays glued to its token.
std::vector<std::string> normalize_tokens(const std::string& text);

// Candidate-side truncation for limited-length recall. Bytes count the
// single-space joined text; a word budget keeps whole tokens. At least one
// token survives a positive budget. Sentence units are not a token-level
// notion and are rejected here.
std::vector<std::string> truncate_candidate(const std::vector<std::string>& tokens,
                                            const LengthBudget& budget);

// N-gram recall against the reference with clipped (multiset) counts.
double rouge_n_recall(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference, std::size_t n);

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// LCS length over reference length.
double rouge_l_recall(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference);

// Truncates the candidate to the budget, then computes Rouge-1/2/L recall.
// The reference is never truncated.
RougeScore limited_length_rouge(const std::vector<std::string>& candidate,
                                const std::vector<std::string>& reference,
                                const LengthBudget& budget);

// Joins candidate sentences in the given order, applies the budget, scores
// against the reference summary. A sentence budget keeps the first
// `limit` sentences instead of truncating tokens.
RougeScore evaluate_summary(const std::vector<std::vector<std::string>>& candidate_sentences,
                            const std::vector<std::string>& reference,
                            const LengthBudget& budget);

std::string budget_unit_name(BudgetUnit unit);
BudgetUnit parse_budget_unit(const std::string& name);
std::string rouge_variant_name(RougeVariant v);
RougeVariant parse_rouge_variant(const std::string& name);

}  // namespace extsum
