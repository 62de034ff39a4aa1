#include "extsum/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace extsum {

ClassifierForward classifier_forward(Graph& g, const DocumentEncoding& enc, ModelParams& model,
                                     const std::vector<int>* labels) {
  if (model.config.arch != Architecture::kClassifier) {
    throw std::invalid_argument("classifier_forward: model is not a classifier");
  }
  std::size_t n = enc.sentence_repr.size();
  if (n == 0) throw std::invalid_argument("classifier_forward: empty encoding");
  if (labels && labels->size() != n) {
    throw std::invalid_argument("classifier_forward: label count does not match sentences");
  }

  ClassifierForward out;
  out.repr = enc.sentence_repr;
  if (model.config.depth == Depth::kDeep) {
    Value state = g.zeros({model.config.dims.sentence_dim()});
    for (std::size_t j = 0; j < n; ++j) {
      state = gru_step(g, enc.sentence_repr[j], state, model.deep);
      out.repr[j] = state;
    }
  }

  Value summary = g.zeros({model.config.dims.sentence_dim()});
  out.summary_states.push_back(summary);
  for (std::size_t j = 0; j < n; ++j) {
    SentenceScore score = score_sentence(g, out.repr[j], summary, enc.doc_repr, enc.positions[j],
                                         model);
    Value p = g.sigmoid(score.node);
    out.prob_nodes.push_back(p);
    out.predictions.push_back({g.scalar(p), score.breakdown});
    if (labels) {
      if ((*labels)[j] != 0) summary = g.add(summary, out.repr[j]);
    } else {
      summary = g.add(summary, g.scale(out.repr[j], p));
    }
    out.summary_states.push_back(summary);
  }
  return out;
}

Value classifier_loss(Graph& g, std::span<const Value> prob_nodes, std::span<const int> labels) {
  if (prob_nodes.empty()) throw std::invalid_argument("classifier_loss: no sentences");
  if (prob_nodes.size() != labels.size()) {
    throw std::invalid_argument("classifier_loss: label count does not match probabilities");
  }
  std::vector<Value> terms;
  terms.reserve(prob_nodes.size());
  for (std::size_t j = 0; j < prob_nodes.size(); ++j) {
    Value clamped = g.clamp(prob_nodes[j], kProbEps, 1.0 - kProbEps);
    terms.push_back(labels[j] != 0 ? g.log(clamped) : g.log(g.one_minus(clamped)));
  }
  return g.neg(g.sum(terms));
}

std::vector<std::size_t> pick_summary_by_probability(
    std::span<const double> probabilities, const LengthBudget& budget,
    const std::vector<std::vector<std::string>>& sentences) {
  if (probabilities.size() != sentences.size()) {
    throw std::invalid_argument("pick_summary_by_probability: probability count mismatch");
  }
  std::vector<std::size_t> ranked(probabilities.size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    if (probabilities[a] != probabilities[b]) return probabilities[a] > probabilities[b];
    return a < b;
  });

  std::vector<std::size_t> picked;
  if (budget.limit == 0) return picked;
  if (budget.unit == BudgetUnit::kSentences) {
    std::size_t keep = std::min<std::size_t>(budget.limit, ranked.size());
    picked.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep));
    return picked;
  }

  std::size_t used = 0;  // bytes of the joined text, or tokens
  for (std::size_t index : ranked) {
    picked.push_back(index);
    if (budget.unit == BudgetUnit::kWords) {
      used += sentences[index].size();
    } else {
      for (const auto& token : sentences[index]) {
        used += (used > 0 ? 1 : 0) + token.size();
      }
    }
    if (used > budget.limit) break;  // the crossing sentence stays in
  }
  return picked;
}

}  // namespace extsum
