#include "extsum/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace extsum {

double RougeScore::variant(RougeVariant v) const {
  switch (v) {
    case RougeVariant::kRouge1: return rouge1;
    case RougeVariant::kRouge2: return rouge2;
    case RougeVariant::kRougeL: return rouge_l;
    case RougeVariant::kMean12: return 0.5 * (rouge1 + rouge2);
  }
  throw std::logic_error("RougeScore::variant: unknown variant");
}

std::vector<std::string> normalize_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> truncate_candidate(const std::vector<std::string>& tokens,
                                            const LengthBudget& budget) {
  if (budget.unit == BudgetUnit::kSentences) {
    throw std::invalid_argument("truncate_candidate: sentence budgets apply to sentence lists");
  }
  if (budget.limit == 0 || tokens.empty()) return {};
  if (budget.unit == BudgetUnit::kWords) {
    std::size_t keep = std::min(budget.limit, tokens.size());
    return {tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(keep)};
  }
  // Bytes of the single-space joined text. A positive budget always keeps the
  // first token even when that token alone is over the limit.
  std::vector<std::string> out{tokens[0]};
  std::size_t bytes = tokens[0].size();
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    std::size_t next = bytes + 1 + tokens[i].size();
    if (next > budget.limit) break;
    out.push_back(tokens[i]);
    bytes = next;
  }
  return out;
}

namespace {

std::unordered_map<std::string, std::size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                          std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double rouge_n_recall(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rouge_n_recall: n must be positive");
  if (reference.size() < n) return 0.0;
  std::size_t total = reference.size() - n + 1;
  auto remaining = ngram_counts(reference, n);
  std::size_t matched = 0;
  if (candidate.size() >= n) {
    for (std::size_t i = 0; i + n <= candidate.size(); ++i) {
      std::string key = candidate[i];
      for (std::size_t j = 1; j < n; ++j) {
        key.push_back('\x1f');
        key += candidate[i + j];
      }
      auto it = remaining.find(key);
      if (it != remaining.end() && it->second > 0) {
        --it->second;
        ++matched;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(total);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double rouge_l_recall(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference) {
  if (reference.empty()) return 0.0;
  return static_cast<double>(lcs_length(candidate, reference)) /
         static_cast<double>(reference.size());
}

RougeScore limited_length_rouge(const std::vector<std::string>& candidate,
                                const std::vector<std::string>& reference,
                                const LengthBudget& budget) {
  std::vector<std::string> trimmed = truncate_candidate(candidate, budget);
  RougeScore score;
  score.rouge1 = rouge_n_recall(trimmed, reference, 1);
  score.rouge2 = rouge_n_recall(trimmed, reference, 2);
  score.rouge_l = rouge_l_recall(trimmed, reference);
  return score;
}

RougeScore evaluate_summary(const std::vector<std::vector<std::string>>& candidate_sentences,
                            const std::vector<std::string>& reference,
                            const LengthBudget& budget) {
  std::vector<std::string> flat;
  if (budget.unit == BudgetUnit::kSentences) {
    std::size_t keep = std::min(budget.limit, candidate_sentences.size());
    for (std::size_t i = 0; i < keep; ++i) {
      flat.insert(flat.end(), candidate_sentences[i].begin(), candidate_sentences[i].end());
    }
    RougeScore score;
    score.rouge1 = rouge_n_recall(flat, reference, 1);
    score.rouge2 = rouge_n_recall(flat, reference, 2);
    score.rouge_l = rouge_l_recall(flat, reference);
    return score;
  }
  for (const auto& sentence : candidate_sentences) {
    flat.insert(flat.end(), sentence.begin(), sentence.end());
  }
  return limited_length_rouge(flat, reference, budget);
}

std::string budget_unit_name(BudgetUnit unit) {
  switch (unit) {
    case BudgetUnit::kBytes: return "bytes";
    case BudgetUnit::kWords: return "words";
    case BudgetUnit::kSentences: return "sentences";
  }
  throw std::logic_error("budget_unit_name: unknown unit");
}

BudgetUnit parse_budget_unit(const std::string& name) {
  if (name == "bytes") return BudgetUnit::kBytes;
  if (name == "words") return BudgetUnit::kWords;
  if (name == "sentences") return BudgetUnit::kSentences;
  throw std::invalid_argument("unknown budget unit: " + name);
}

std::string rouge_variant_name(RougeVariant v) {
  switch (v) {
    case RougeVariant::kRouge1: return "r1";
    case RougeVariant::kRouge2: return "r2";
    case RougeVariant::kRougeL: return "rl";
    case RougeVariant::kMean12: return "mean12";
  }
  throw std::logic_error("rouge_variant_name: unknown variant");
}

RougeVariant parse_rouge_variant(const std::string& name) {
  if (name == "r1") return RougeVariant::kRouge1;
  if (name == "r2") return RougeVariant::kRouge2;
  if (name == "rl") return RougeVariant::kRougeL;
  if (name == "mean12") return RougeVariant::kMean12;
  throw std::invalid_argument("unknown objective: " + name);
}

}  // namespace extsum
