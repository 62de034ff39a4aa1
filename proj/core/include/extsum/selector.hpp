#pragma once

#include <span>
#include <vector>

#include "extsum/encoder.hpp"
#include "extsum/rouge.hpp"
#include "extsum/scoring.hpp"

namespace extsum {

// Distribution over every sentence of the document at one selection step.
// Already-emitted indices keep their probability mass; masking happens only
// at generation time.
struct SelectionDistribution {
  Value prob_node;
  std::vector<double> probabilities;
  std::vector<ScoreBreakdown> breakdowns;
};

struct SelectorState {
  Value summary;
  std::vector<std::size_t> emitted;
};

struct SelectorLoss {
  Value node;
  std::vector<double> step_terms;  // per-step negative log-likelihood
};

// Shallow: the summary starts at zero and accumulates picked sentence
// vectors. Deep: the summary is the hidden state of a dedicated GRU fed the
// picked vectors, primed with one step on a zero input.
SelectorState selector_initial_state(Graph& g, ModelParams& model);

SelectionDistribution selection_distribution(Graph& g, const DocumentEncoding& enc,
                                             const SelectorState& state, ModelParams& model);

// Folds sentence `chosen` into the summary. Repeats are rejected.
SelectorState selector_advance(Graph& g, const SelectorState& state, std::size_t chosen,
                               const DocumentEncoding& enc, ModelParams& model);

// Teacher-forced negative log-likelihood of a ground-truth selection order.
SelectorLoss selector_loss(Graph& g, const DocumentEncoding& enc,
                           std::span<const std::size_t> order, ModelParams& model);

// Greedy argmax over not-yet-emitted sentences until the budget is spent.
// Byte and word budgets keep the sentence that crosses the limit; a sentence
// budget stops exactly at the limit. Indices are in selection order.
std::vector<std::size_t> generate_selection(Graph& g, const DocumentEncoding& enc,
                                            ModelParams& model, const LengthBudget& budget,
                                            const std::vector<std::vector<std::string>>& sentences);

}  // namespace extsum
