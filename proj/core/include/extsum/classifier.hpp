#pragma once

#include <span>
#include <vector>

#include "extsum/encoder.hpp"
#include "extsum/rouge.hpp"
#include "extsum/scoring.hpp"

namespace extsum {

constexpr double kProbEps = 1e-12;

struct SentencePrediction {
  double probability = 0.0;
  ScoreBreakdown breakdown;
};

struct ClassifierForward {
  std::vector<SentencePrediction> predictions;
  std::vector<Value> prob_nodes;      // P(keep sentence j)
  std::vector<Value> repr;            // representation fed to the score and the summary
  std::vector<Value> summary_states;  // running summary before each step, plus the final one
};

// Visits sentences in document order. The deep variant first runs a
// unidirectional pass over the sentence vectors and scores those states
// instead. With labels the summary accumulates the representation of each
// label-1 sentence; without labels it accumulates probability-weighted
// representations.
ClassifierForward classifier_forward(Graph& g, const DocumentEncoding& enc, ModelParams& model,
                                     const std::vector<int>* labels);

// Summed negative log-likelihood over the sentence decisions, with each
// probability clamped away from 0 and 1.
Value classifier_loss(Graph& g, std::span<const Value> prob_nodes, std::span<const int> labels);

// Ranks sentences by probability (ties prefer the earlier index) and takes
// them until the budget is spent. Byte and word budgets keep the sentence
// that crosses the limit; a sentence budget never overshoots. The returned
// indices stay in rank order.
std::vector<std::size_t> pick_summary_by_probability(
    std::span<const double> probabilities, const LengthBudget& budget,
    const std::vector<std::vector<std::string>>& sentences);

}  // namespace extsum
