#include "extsum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace extsum {

namespace {

// Joined token stream of the selected sentences in document order.
std::vector<std::string> flatten_selection(const std::vector<std::vector<std::string>>& sentences,
                                           const std::vector<std::size_t>& ascending) {
  std::vector<std::string> flat;
  for (std::size_t idx : ascending) {
    flat.insert(flat.end(), sentences[idx].begin(), sentences[idx].end());
  }
  return flat;
}

double selection_objective(const std::vector<std::vector<std::string>>& sentences,
                           const std::vector<std::size_t>& ascending,
                           const std::vector<std::string>& gold, RougeVariant objective) {
  std::vector<std::string> flat = flatten_selection(sentences, ascending);
  RougeScore score;
  switch (objective) {
    case RougeVariant::kRouge1:
      score.rouge1 = rouge_n_recall(flat, gold, 1);
      break;
    case RougeVariant::kRouge2:
      score.rouge2 = rouge_n_recall(flat, gold, 2);
      break;
    case RougeVariant::kRougeL:
      score.rouge_l = rouge_l_recall(flat, gold);
      break;
    case RougeVariant::kMean12:
      score.rouge1 = rouge_n_recall(flat, gold, 1);
      score.rouge2 = rouge_n_recall(flat, gold, 2);
      break;
  }
  return score.variant(objective);
}

bool budget_reached(const std::vector<std::vector<std::string>>& sentences,
                    const std::vector<std::size_t>& ascending, const LengthBudget& budget) {
  if (budget.unit == BudgetUnit::kSentences) {
    return ascending.size() >= budget.limit;
  }
  std::size_t used = 0;
  for (std::size_t idx : ascending) {
    if (budget.unit == BudgetUnit::kWords) {
      used += sentences[idx].size();
    } else {
      for (const auto& token : sentences[idx]) used += (used > 0 ? 1 : 0) + token.size();
    }
  }
  return used >= budget.limit;
}

}  // namespace

OracleResult greedy_extractive_labels(const std::vector<std::vector<std::string>>& sentences,
                                      const std::vector<std::string>& gold,
                                      const LengthBudget& budget, RougeVariant objective) {
  if (sentences.empty()) {
    throw std::invalid_argument("greedy_extractive_labels: document has no sentences");
  }
  if (gold.empty()) {
    throw std::invalid_argument("greedy_extractive_labels: gold summary is empty");
  }
  if (budget.limit == 0) {
    throw std::invalid_argument("greedy_extractive_labels: budget must be positive");
  }

  OracleResult result;
  std::vector<char> selected(sentences.size(), 0);
  std::vector<std::size_t> ascending;
  double current = 0.0;

  while (ascending.size() < sentences.size()) {
    std::size_t best = sentences.size();
    double best_score = current;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (selected[i]) continue;
      std::vector<std::size_t> trial = ascending;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), i), i);
      double score = selection_objective(sentences, trial, gold, objective);
      if (score > best_score) {  // strict: ties keep the earlier candidate
        best_score = score;
        best = i;
      }
    }
    if (best == sentences.size()) break;  // nothing improves
    selected[best] = 1;
    ascending.insert(std::upper_bound(ascending.begin(), ascending.end(), best), best);
    result.labels.order.push_back(best);
    current = best_score;
    if (budget_reached(sentences, ascending, budget)) break;
  }

  result.labels.binary.assign(sentences.size(), 0);
  for (std::size_t idx : result.labels.order) result.labels.binary[idx] = 1;
  result.objective = current;
  return result;
}

ExhaustiveResult exhaustive_oracle(const std::vector<std::vector<std::string>>& sentences,
                                   const std::vector<std::string>& gold, std::size_t k,
                                   RougeVariant objective) {
  if (sentences.empty()) {
    throw std::invalid_argument("exhaustive_oracle: document has no sentences");
  }
  if (gold.empty()) throw std::invalid_argument("exhaustive_oracle: gold summary is empty");
  // 2^N subsets; anything bigger belongs to the greedy path. k >= N is the
  // unconstrained optimum and allowed regardless of k.
  if (sentences.size() > 12) {
    throw std::invalid_argument("exhaustive_oracle: more than 12 sentences");
  }
  if (k > 4 && k < sentences.size()) {
    throw std::invalid_argument("exhaustive_oracle: k above 4 is not supported");
  }

  ExhaustiveResult best;
  std::size_t n = sentences.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) indices.push_back(i);
    }
    double score = selection_objective(sentences, indices, gold, objective);
    if (score > best.objective ||
        (score == best.objective &&
         std::lexicographical_compare(indices.begin(), indices.end(), best.indices.begin(),
                                      best.indices.end()))) {
      best.objective = score;
      best.indices = std::move(indices);
    }
  }
  return best;
}

LabelStats label_corpus(Corpus& corpus, const LengthBudget& budget, RougeVariant objective) {
  LabelStats stats;
  stats.documents = corpus.size();
  if (corpus.empty()) return stats;

  double selected_sum = 0.0, objective_sum = 0.0;
  for (Document& doc : corpus.documents) {
    if (!doc.has_summary()) {
      throw std::runtime_error("label_corpus: document " + doc.id + " has no gold summary");
    }
    OracleResult result = greedy_extractive_labels(doc.sentences, doc.summary, budget, objective);
    if (result.labels.order.empty()) ++stats.empty_selections;
    selected_sum += static_cast<double>(result.labels.order.size());
    objective_sum += result.objective;
    doc.labels = std::move(result.labels);
  }
  stats.mean_selected = selected_sum / static_cast<double>(corpus.size());
  stats.mean_objective = objective_sum / static_cast<double>(corpus.size());
  return stats;
}

}  // namespace extsum
