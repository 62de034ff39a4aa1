#include "extsum/selector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extsum/classifier.hpp"  // kProbEps

namespace extsum {

SelectorState selector_initial_state(Graph& g, ModelParams& model) {
  if (model.config.arch != Architecture::kSelector) {
    throw std::invalid_argument("selector_initial_state: model is not a selector");
  }
  SelectorState state;
  std::size_t dim = model.config.dims.sentence_dim();
  if (model.config.depth == Depth::kDeep) {
    state.summary = gru_step(g, g.zeros({dim}), g.zeros({dim}), model.deep);
  } else {
    state.summary = g.zeros({dim});
  }
  return state;
}

SelectionDistribution selection_distribution(Graph& g, const DocumentEncoding& enc,
                                             const SelectorState& state, ModelParams& model) {
  std::size_t n = enc.sentence_repr.size();
  if (n == 0) throw std::invalid_argument("selection_distribution: empty encoding");

  SelectionDistribution dist;
  std::vector<Value> scores;
  scores.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    SentenceScore score = score_sentence(g, enc.sentence_repr[j], state.summary, enc.doc_repr,
                                         enc.positions[j], model);
    scores.push_back(score.node);
    dist.breakdowns.push_back(score.breakdown);
  }
  dist.prob_node = g.softmax(g.stack(scores));
  dist.probabilities = g.value(dist.prob_node).values();
  return dist;
}

SelectorState selector_advance(Graph& g, const SelectorState& state, std::size_t chosen,
                               const DocumentEncoding& enc, ModelParams& model) {
  std::size_t n = enc.sentence_repr.size();
  if (chosen >= n) {
    throw std::out_of_range("selector_advance: index " + std::to_string(chosen) + " out of " +
                            std::to_string(n));
  }
  if (std::find(state.emitted.begin(), state.emitted.end(), chosen) != state.emitted.end()) {
    throw std::invalid_argument("selector_advance: sentence " + std::to_string(chosen) +
                                " was already selected");
  }
  SelectorState next;
  next.emitted = state.emitted;
  next.emitted.push_back(chosen);
  if (model.config.depth == Depth::kDeep) {
    next.summary = gru_step(g, enc.sentence_repr[chosen], state.summary, model.deep);
  } else {
    next.summary = g.add(state.summary, enc.sentence_repr[chosen]);
  }
  return next;
}

SelectorLoss selector_loss(Graph& g, const DocumentEncoding& enc,
                           std::span<const std::size_t> order, ModelParams& model) {
  if (order.empty()) throw std::invalid_argument("selector_loss: empty selection order");

  SelectorState state = selector_initial_state(g, model);
  SelectorLoss loss;
  std::vector<Value> terms;
  terms.reserve(order.size());
  for (std::size_t target : order) {
    SelectionDistribution dist = selection_distribution(g, enc, state, model);
    Value p = g.clamp(g.pick(dist.prob_node, target), kProbEps, 1.0 - kProbEps);
    terms.push_back(g.log(p));
    loss.step_terms.push_back(-std::log(g.scalar(p)));
    state = selector_advance(g, state, target, enc, model);
  }
  loss.node = g.neg(g.sum(terms));
  return loss;
}

std::vector<std::size_t> generate_selection(Graph& g, const DocumentEncoding& enc,
                                            ModelParams& model, const LengthBudget& budget,
                                            const std::vector<std::vector<std::string>>& sentences) {
  std::size_t n = enc.sentence_repr.size();
  if (sentences.size() != n) {
    throw std::invalid_argument("generate_selection: sentence text count mismatch");
  }
  if (budget.limit == 0) return {};

  SelectorState state = selector_initial_state(g, model);
  std::size_t used = 0;  // bytes of the joined text, or tokens
  while (state.emitted.size() < n) {
    SelectionDistribution dist = selection_distribution(g, enc, state, model);
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(state.emitted.begin(), state.emitted.end(), j) != state.emitted.end()) {
        continue;
      }
      if (best == n || dist.probabilities[j] > dist.probabilities[best]) best = j;
    }
    state = selector_advance(g, state, best, enc, model);

    if (budget.unit == BudgetUnit::kSentences) {
      if (state.emitted.size() >= budget.limit) break;
    } else {
      if (budget.unit == BudgetUnit::kWords) {
        used += sentences[best].size();
      } else {
        for (const auto& token : sentences[best]) {
          used += (used > 0 ? 1 : 0) + token.size();
        }
      }
      if (used > budget.limit) break;
    }
  }
  return state.emitted;
}

}  // namespace extsum
