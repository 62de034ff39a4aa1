#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extsum/corpus.hpp"
#include "extsum/model.hpp"
#include "extsum/optimizer.hpp"
#include "extsum/rouge.hpp"

namespace extsum {

struct TrainConfig {
  Architecture arch = Architecture::kClassifier;
  Depth depth = Depth::kDeep;
  ModelDims dims;
  std::size_t batch_size = 32;
  double clip_threshold = 5.0;
  double l2 = 1e-5;
  std::size_t patience = 3;
  std::size_t max_epochs = 50;
  std::uint64_t seed = 1;
  std::optional<Feature> ablated;
  AdadeltaConfig adadelta;
  std::string pretrained_embeddings;  // optional path, applied after init
};

struct TrainHistory {
  std::vector<double> train_loss;      // mean per labeled training document
  std::vector<double> validation_cost; // pure data loss, no regularizer
  std::size_t best_epoch = 0;          // 1-based; 0 means never trained
};

struct Checkpoint {
  static constexpr int kVersion = 1;
  TrainConfig config;
  Vocabulary vocab;
  ModelParams model;
  Adadelta optimizer;
  TrainHistory history;
};

// Mini-batch training with adadelta, global-norm clipping, L2 on everything
// but biases, and patience-based early stopping on validation cost. Returns
// the parameters of the best validation epoch. Both corpora must carry
// labels; the classifier treats an empty selection as all-negative while the
// selector skips such documents.
Checkpoint train(const TrainConfig& config, const Corpus& train_corpus, const Corpus& val_corpus,
                 const Vocabulary& vocab);

// Inference for one document: selected sentence indices in pick order.
std::vector<std::size_t> summarize_document(Checkpoint& checkpoint, const Document& doc,
                                            const LengthBudget& budget);

// Per-sentence inference detail used by the visualization path: the score
// breakdown of every sentence plus its probability (classifier) or its
// first-step selection probability (selector).
struct SentenceInspection {
  double probability = 0.0;
  double content = 0.0, salience = 0.0, position = 0.0, redundancy = 0.0, bias = 0.0, total = 0.0;
};
std::vector<SentenceInspection> inspect_document(Checkpoint& checkpoint, const Document& doc);

struct DocumentEvaluation {
  std::string id;
  std::vector<std::size_t> picked;
  RougeScore score;
};

struct EvaluationReport {
  std::vector<DocumentEvaluation> documents;
  RougeScore mean;
  RougeScore lead_baseline;  // first three sentences under the same budget
  LengthBudget budget;
};

EvaluationReport evaluate(Checkpoint& checkpoint, const Corpus& corpus,
                          const LengthBudget& budget);

// Mean data loss per usable document, no regularizer. Exposed for tests.
double corpus_data_cost(ModelParams& model, const Corpus& corpus, const Vocabulary& vocab);

struct AblationRow {
  std::string label;
  RougeScore score;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // full model first, then one per dropped term
};

// Retrains from scratch once per dropped score term and evaluates each run
// on the same test corpus.
AblationReport ablate(const TrainConfig& base, const Corpus& train_corpus,
                      const Corpus& val_corpus, const Corpus& test_corpus,
                      const Vocabulary& vocab, const LengthBudget& budget);

}  // namespace extsum
