#include "extsum/trainer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "extsum/classifier.hpp"
#include "extsum/encoder.hpp"
#include "extsum/selector.hpp"

namespace extsum {

namespace {

struct PreparedDoc {
  const Document* doc = nullptr;
  std::vector<std::vector<std::size_t>> token_ids;
};

// The classifier trains on every labeled document (an empty selection is a
// valid all-negative target); the selector needs a non-empty order.
bool usable_for(Architecture arch, const Document& doc) {
  if (!doc.labels.has_value()) return false;
  if (arch == Architecture::kSelector) return !doc.labels->order.empty();
  return true;
}

std::vector<PreparedDoc> prepare(const Corpus& corpus, const Vocabulary& vocab,
                                 Architecture arch, const char* role) {
  std::vector<PreparedDoc> docs;
  bool any_labeled = false;
  for (const Document& doc : corpus.documents) {
    if (!doc.labels.has_value()) {
      throw std::runtime_error(std::string(role) + " corpus is not labeled (document " + doc.id +
                               "); run the labeler first");
    }
    any_labeled = true;
    if (!usable_for(arch, doc)) continue;
    docs.push_back({&doc, tokens_to_ids(doc, vocab)});
  }
  if (!any_labeled || docs.empty()) {
    throw std::runtime_error(std::string(role) +
                             " corpus has no usable documents for this architecture");
  }
  return docs;
}

double document_loss(Graph& g, ModelParams& model, const PreparedDoc& item, bool with_grad) {
  DocumentEncoding enc = encode(g, item.token_ids, model);
  Value loss;
  if (model.config.arch == Architecture::kClassifier) {
    ClassifierForward fwd = classifier_forward(g, enc, model, &item.doc->labels->binary);
    loss = classifier_loss(g, fwd.prob_nodes, item.doc->labels->binary);
  } else {
    loss = selector_loss(g, enc, item.doc->labels->order, model).node;
  }
  double value = g.scalar(loss);
  if (with_grad) g.backward(loss);
  return value;
}

std::vector<Tensor> snapshot_values(const ParamSet& set) {
  std::vector<Tensor> out;
  out.reserve(set.size());
  for (const auto& p : set) out.push_back(p->value);
  return out;
}

void restore_values(ParamSet& set, const std::vector<Tensor>& snapshot) {
  for (std::size_t i = 0; i < set.size(); ++i) set[i].value = snapshot[i];
}

}  // namespace

Checkpoint train(const TrainConfig& config, const Corpus& train_corpus, const Corpus& val_corpus,
                 const Vocabulary& vocab) {
  if (config.batch_size == 0) throw std::invalid_argument("train: batch size must be positive");
  if (config.patience == 0) throw std::invalid_argument("train: patience must be positive");
  if (config.l2 < 0.0) throw std::invalid_argument("train: l2 must not be negative");
  if (vocab.size() == 0) throw std::invalid_argument("train: empty vocabulary");

  TrainConfig cfg = config;
  cfg.dims.vocab = vocab.size();

  ModelConfig mc;
  mc.arch = cfg.arch;
  mc.depth = cfg.depth;
  mc.dims = cfg.dims;
  if (cfg.ablated.has_value()) mc.features.disable(*cfg.ablated);

  Checkpoint ck;
  ck.config = cfg;
  ck.vocab = vocab;
  ck.model = build_model(mc, cfg.seed);
  if (!cfg.pretrained_embeddings.empty()) {
    load_pretrained_embeddings(cfg.pretrained_embeddings, vocab, *ck.model.embedding);
  }
  ck.optimizer = Adadelta(ck.model.set, cfg.adadelta);

  std::vector<PreparedDoc> train_docs = prepare(train_corpus, vocab, cfg.arch, "training");
  std::vector<PreparedDoc> val_docs = prepare(val_corpus, vocab, cfg.arch, "validation");

  auto validation_cost = [&]() {
    double sum = 0.0;
    for (const PreparedDoc& item : val_docs) {
      Graph g;
      sum += document_loss(g, ck.model, item, false);
    }
    return sum / static_cast<double>(val_docs.size());
  };

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_values = snapshot_values(ck.model.set);
  std::vector<Tensor> best_grad_accum = ck.optimizer.grad_accum();
  std::vector<Tensor> best_delta_accum = ck.optimizer.delta_accum();
  std::size_t since_best = 0;

  std::vector<std::size_t> order(train_docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng shuffle_rng(mix_seed(cfg.seed, epoch));
    shuffle_rng.shuffle(order);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      ck.model.set.zero_grad();
      for (std::size_t i = start; i < stop; ++i) {
        Graph g;
        epoch_loss += document_loss(g, ck.model, train_docs[order[i]], true);
      }
      if (cfg.l2 > 0.0) {
        for (auto& p : ck.model.set) {
          if (!p->regularized) continue;
          for (std::size_t k = 0; k < p->value.size(); ++k) p->grad[k] += cfg.l2 * p->value[k];
        }
      }
      clip_global_norm(ck.model.set, cfg.clip_threshold);
      ck.optimizer.step(ck.model.set);
    }
    ck.history.train_loss.push_back(epoch_loss / static_cast<double>(train_docs.size()));

    double cost = validation_cost();
    ck.history.validation_cost.push_back(cost);
    if (cost < best_cost) {
      best_cost = cost;
      ck.history.best_epoch = epoch;
      best_values = snapshot_values(ck.model.set);
      best_grad_accum = ck.optimizer.grad_accum();
      best_delta_accum = ck.optimizer.delta_accum();
      since_best = 0;
    } else {
      ++since_best;
      if (since_best >= cfg.patience) break;
    }
  }

  restore_values(ck.model.set, best_values);
  ck.optimizer.grad_accum() = std::move(best_grad_accum);
  ck.optimizer.delta_accum() = std::move(best_delta_accum);
  return ck;
}

std::vector<std::size_t> summarize_document(Checkpoint& checkpoint, const Document& doc,
                                            const LengthBudget& budget) {
  std::vector<std::vector<std::size_t>> ids = tokens_to_ids(doc, checkpoint.vocab);
  Graph g;
  DocumentEncoding enc = encode(g, ids, checkpoint.model);
  if (checkpoint.config.arch == Architecture::kClassifier) {
    ClassifierForward fwd = classifier_forward(g, enc, checkpoint.model, nullptr);
    std::vector<double> probs;
    probs.reserve(fwd.predictions.size());
    for (const auto& p : fwd.predictions) probs.push_back(p.probability);
    return pick_summary_by_probability(probs, budget, doc.sentences);
  }
  return generate_selection(g, enc, checkpoint.model, budget, doc.sentences);
}

std::vector<SentenceInspection> inspect_document(Checkpoint& checkpoint, const Document& doc) {
  std::vector<std::vector<std::size_t>> ids = tokens_to_ids(doc, checkpoint.vocab);
  Graph g;
  DocumentEncoding enc = encode(g, ids, checkpoint.model);
  std::vector<SentenceInspection> rows;
  auto push_row = [&rows](double probability, const ScoreBreakdown& b) {
    rows.push_back({probability, b.content, b.salience, b.position, b.redundancy, b.bias, b.total});
  };
  if (checkpoint.config.arch == Architecture::kClassifier) {
    ClassifierForward fwd = classifier_forward(g, enc, checkpoint.model, nullptr);
    for (const auto& p : fwd.predictions) push_row(p.probability, p.breakdown);
  } else {
    SelectorState state = selector_initial_state(g, checkpoint.model);
    SelectionDistribution dist = selection_distribution(g, enc, state, checkpoint.model);
    for (std::size_t j = 0; j < dist.probabilities.size(); ++j) {
      push_row(dist.probabilities[j], dist.breakdowns[j]);
    }
  }
  return rows;
}

EvaluationReport evaluate(Checkpoint& checkpoint, const Corpus& corpus,
                          const LengthBudget& budget) {
  if (corpus.empty()) throw std::runtime_error("evaluate: empty corpus");
  EvaluationReport report;
  report.budget = budget;
  RougeScore mean, lead;
  for (const Document& doc : corpus.documents) {
    if (!doc.has_summary()) {
      throw std::runtime_error("evaluate: document " + doc.id + " has no gold summary");
    }
    DocumentEvaluation entry;
    entry.id = doc.id;
    entry.picked = summarize_document(checkpoint, doc, budget);
    std::vector<std::vector<std::string>> candidate;
    candidate.reserve(entry.picked.size());
    for (std::size_t idx : entry.picked) candidate.push_back(doc.sentences[idx]);
    entry.score = evaluate_summary(candidate, doc.summary, budget);
    mean.rouge1 += entry.score.rouge1;
    mean.rouge2 += entry.score.rouge2;
    mean.rouge_l += entry.score.rouge_l;

    std::vector<std::vector<std::string>> lead_candidate;
    for (std::size_t j = 0; j < std::min<std::size_t>(3, doc.sentences.size()); ++j) {
      lead_candidate.push_back(doc.sentences[j]);
    }
    RougeScore lead_score = evaluate_summary(lead_candidate, doc.summary, budget);
    lead.rouge1 += lead_score.rouge1;
    lead.rouge2 += lead_score.rouge2;
    lead.rouge_l += lead_score.rouge_l;

    report.documents.push_back(std::move(entry));
  }
  double inv = 1.0 / static_cast<double>(corpus.size());
  report.mean = {mean.rouge1 * inv, mean.rouge2 * inv, mean.rouge_l * inv};
  report.lead_baseline = {lead.rouge1 * inv, lead.rouge2 * inv, lead.rouge_l * inv};
  return report;
}

double corpus_data_cost(ModelParams& model, const Corpus& corpus, const Vocabulary& vocab) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (const Document& doc : corpus.documents) {
    if (!doc.labels.has_value() || !usable_for(model.config.arch, doc)) continue;
    PreparedDoc item{&doc, tokens_to_ids(doc, vocab)};
    Graph g;
    sum += document_loss(g, model, item, false);
    ++counted;
  }
  if (counted == 0) throw std::runtime_error("corpus_data_cost: no usable labeled documents");
  return sum / static_cast<double>(counted);
}

AblationReport ablate(const TrainConfig& base, const Corpus& train_corpus,
                      const Corpus& val_corpus, const Corpus& test_corpus,
                      const Vocabulary& vocab, const LengthBudget& budget) {
  static const std::pair<const char*, std::optional<Feature>> kRows[] = {
      {"all", std::nullopt},
      {"-salience", Feature::kSalience},
      {"-position", Feature::kPosition},
      {"-content", Feature::kContent},
      {"-redundancy", Feature::kRedundancy},
  };
  AblationReport report;
  for (const auto& [label, dropped] : kRows) {
    TrainConfig cfg = base;
    cfg.ablated = dropped;
    Checkpoint ck = train(cfg, train_corpus, val_corpus, vocab);
    EvaluationReport eval = evaluate(ck, test_corpus, budget);
    report.rows.push_back({label, eval.mean});
  }
  return report;
}

}  // namespace extsum
