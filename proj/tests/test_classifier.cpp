#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "extsum/classifier.hpp"
#include "extsum/gradcheck.hpp"

#include "support/helpers.hpp"
#include "support/reference.hpp"

using namespace extsum;
using testsupport::tiny_model;

namespace {

// Training-mode reference: the summary accumulates label-1 representations.
std::vector<double> labeled_probabilities(const ModelParams& m, const refmodel::RefEncoding& enc,
                                          const std::vector<int>& labels) {
  std::size_t n = enc.sentence_repr.size();
  std::vector<refmodel::Vec> repr = enc.sentence_repr;
  if (m.config.depth == Depth::kDeep) {
    refmodel::Vec state(2 * m.config.dims.sent_hidden, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      state = refmodel::gru_step(m.deep, enc.sentence_repr[j], state);
      repr[j] = state;
    }
  }
  refmodel::Vec summary(2 * m.config.dims.sent_hidden, 0.0);
  std::vector<double> probs(n);
  for (std::size_t j = 0; j < n; ++j) {
    probs[j] =
        refmodel::sigmoid(refmodel::score(m, repr[j], summary, enc.doc_repr, enc.positions[j]));
    if (labels[j] == 1) {
      for (std::size_t i = 0; i < summary.size(); ++i) summary[i] += repr[j][i];
    }
  }
  return probs;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("test-mode probabilities match the reference for both depths") {
  for (Depth depth : {Depth::kShallow, Depth::kDeep}) {
    ModelParams model = tiny_model(Architecture::kClassifier, depth, 61);
    Rng rng(3);
    auto ids = testsupport::random_doc_ids(rng, model.config.dims.vocab, 4, 3);

    Graph g;
    DocumentEncoding enc = encode(g, ids, model);
    ClassifierForward fwd = classifier_forward(g, enc, model, nullptr);

    refmodel::RefEncoding ref = refmodel::encode_document(model, ids);
    std::vector<double> expected = refmodel::classifier_probabilities(model, ref);
    REQUIRE(fwd.predictions.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(fwd.predictions[j].probability == doctest::Approx(expected[j]).epsilon(1e-12));
      CHECK(fwd.predictions[j].probability > 0.0);
      CHECK(fwd.predictions[j].probability < 1.0);
    }
  }
}

TEST_CASE("training-mode summary accumulates only label-1 sentences") {
  for (Depth depth : {Depth::kShallow, Depth::kDeep}) {
    ModelParams model = tiny_model(Architecture::kClassifier, depth, 67);
    Rng rng(5);
    auto ids = testsupport::random_doc_ids(rng, model.config.dims.vocab, 5, 3);
    std::vector<int> labels = {0, 1, 0, 1, 0};

    Graph g;
    DocumentEncoding enc = encode(g, ids, model);
    ClassifierForward fwd = classifier_forward(g, enc, model, &labels);

    refmodel::RefEncoding ref = refmodel::encode_document(model, ids);
    std::vector<double> expected = labeled_probabilities(model, ref, labels);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(fwd.predictions[j].probability == doctest::Approx(expected[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("all-negative labels keep the summary exactly zero") {
  ModelParams model = tiny_model(Architecture::kClassifier, Depth::kShallow, 71);
  Rng rng(7);
  auto ids = testsupport::random_doc_ids(rng, model.config.dims.vocab, 3, 3);
  std::vector<int> labels = {0, 0, 0};

  Graph g;
  DocumentEncoding enc = encode(g, ids, model);
  ClassifierForward fwd = classifier_forward(g, enc, model, &labels);
  REQUIRE(fwd.summary_states.size() == 4);
  for (const Value& s : fwd.summary_states) {
    for (std::size_t i = 0; i < g.value(s).size(); ++i) {
      CHECK(g.value(s)[i] == 0.0);  // bit-exact, not approximately zero
    }
  }
  // Every step then sees the same redundancy term.
  CHECK(fwd.predictions[0].breakdown.redundancy ==
        doctest::Approx(fwd.predictions[2].breakdown.redundancy).epsilon(1e-12));
}

TEST_CASE("loss on balanced probabilities is N ln 2") {
  Graph g;
  std::vector<Value> probs = {g.constant_scalar(0.5), g.constant_scalar(0.5),
                              g.constant_scalar(0.5)};
  std::vector<int> labels = {1, 0, 1};
  Value loss = classifier_loss(g, probs, labels);
  CHECK(g.scalar(loss) == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("loss matches a hand computation") {
  Graph g;
  std::vector<Value> probs = {g.constant_scalar(0.9), g.constant_scalar(0.8)};
  std::vector<int> ones = {1, 1};
  CHECK(g.scalar(classifier_loss(g, probs, ones)) ==
        doctest::Approx(-(std::log(0.9) + std::log(0.8))).epsilon(1e-12));

  std::vector<int> mixed = {1, 0};
  CHECK(g.scalar(classifier_loss(g, probs, mixed)) ==
        doctest::Approx(-(std::log(0.9) + std::log(0.2))).epsilon(1e-9));
}

TEST_CASE("loss clamps probabilities away from zero and one") {
  Graph g;
  std::vector<Value> probs = {g.constant_scalar(0.0)};
  std::vector<int> positive = {1};
  double loss = g.scalar(classifier_loss(g, probs, positive));
  CHECK(std::isfinite(loss));
  CHECK(loss == doctest::Approx(-std::log(kProbEps)).epsilon(1e-9));

  std::vector<Value> certain = {g.constant_scalar(1.0)};
  std::vector<int> negative = {0};
  double loss2 = g.scalar(classifier_loss(g, certain, negative));
  CHECK(std::isfinite(loss2));
  // 1 - (1 - eps) is not exactly eps in doubles; mirror the clamp arithmetic.
  CHECK(loss2 == doctest::Approx(-std::log(1.0 - (1.0 - kProbEps))).epsilon(1e-12));
}

TEST_CASE("loss validates labels") {
  Graph g;
  std::vector<Value> probs = {g.constant_scalar(0.5)};
  std::vector<int> empty;
  CHECK_THROWS_AS(classifier_loss(g, probs, empty), std::invalid_argument);
  std::vector<int> wrong_size = {1, 0};
  CHECK_THROWS_AS(classifier_loss(g, probs, wrong_size), std::invalid_argument);
}

TEST_CASE("forward rejects the wrong architecture and bad label counts") {
  ModelParams model = tiny_model(Architecture::kSelector, Depth::kShallow, 3);
  Rng rng(4);
  auto ids = testsupport::random_doc_ids(rng, model.config.dims.vocab, 3, 3);
  Graph g;
  DocumentEncoding enc = encode(g, ids, model);
  CHECK_THROWS_AS(classifier_forward(g, enc, model, nullptr), std::invalid_argument);

  ModelParams ok = tiny_model(Architecture::kClassifier, Depth::kShallow, 3);
  Graph g2;
  DocumentEncoding enc2 = encode(g2, ids, ok);
  std::vector<int> short_labels = {1, 0};
  CHECK_THROWS_AS(classifier_forward(g2, enc2, ok, &short_labels), std::invalid_argument);
}

TEST_CASE("training loss gradients pass finite differences") {
  for (Depth depth : {Depth::kShallow, Depth::kDeep}) {
    ModelParams model = tiny_model(Architecture::kClassifier, depth, 73);
    testsupport::jitter_params(model.set, 89);  // generic point, biases included
    Rng rng(11);
    auto ids = testsupport::random_doc_ids(rng, model.config.dims.vocab, 3, 3);
    std::vector<int> labels = {1, 0, 1};

    auto loss = [&](bool with_grad) {
      Graph g;
      DocumentEncoding enc = encode(g, ids, model);
      ClassifierForward fwd = classifier_forward(g, enc, model, &labels);
      Value out = classifier_loss(g, fwd.prob_nodes, labels);
      double value = g.scalar(out);
      if (with_grad) g.backward(out);
      return value;
    };

    GradCheckReport report = finite_difference_check(model.set, loss);
    INFO("depth ", depth == Depth::kDeep ? "deep" : "shallow", " max rel error: ",
         report.max_rel_error);
    CHECK(report.pass);
  }
}

TEST_CASE("summary pick ranks by probability with earlier-index ties") {
  std::vector<std::vector<std::string>> sentences = {
      {"a"}, {"b"}, {"c"}, {"d"}};
  std::vector<double> probs = {0.3, 0.9, 0.9, 0.1};
  LengthBudget budget{BudgetUnit::kSentences, 2};
  auto picked = pick_summary_by_probability(probs, budget, sentences);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0] == 1);  // 0.9 tie broken toward the earlier sentence
  CHECK(picked[1] == 2);
}

TEST_CASE("sentence budget never overshoots") {
  std::vector<std::vector<std::string>> sentences = {{"a"}, {"b"}};
  std::vector<double> probs = {0.3, 0.9};
  auto picked = pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kSentences, 5},
                                            sentences);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0] == 1);  // rank order, not document order
  CHECK(picked[1] == 0);
  CHECK(pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kSentences, 0}, sentences)
            .empty());
}

TEST_CASE("byte budget keeps the sentence that crosses the limit") {
  std::vector<std::vector<std::string>> sentences = {{"aa", "bb"}, {"cccc"}};
  std::vector<double> probs = {0.9, 0.8};
  // "aa bb" is 5 bytes; adding "cccc" makes 10.
  auto both = pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kBytes, 6}, sentences);
  REQUIRE(both.size() == 2);
  CHECK(both[0] == 0);
  CHECK(both[1] == 1);

  auto first = pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kBytes, 4}, sentences);
  REQUIRE(first.size() == 1);  // 5 bytes crosses a 4-byte budget; it still goes in
  CHECK(first[0] == 0);
}

TEST_CASE("word budget counts tokens across picked sentences") {
  std::vector<std::vector<std::string>> sentences = {{"x", "y"}, {"z"}, {"w"}};
  std::vector<double> probs = {0.9, 0.8, 0.7};
  auto picked = pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kWords, 2}, sentences);
  // Two words fit exactly; the third word crosses and its sentence is kept.
  REQUIRE(picked.size() == 2);
  CHECK(picked[0] == 0);
  CHECK(picked[1] == 1);

  auto one = pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kWords, 1}, sentences);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 0);
}

TEST_CASE("summary pick validates the probability count") {
  std::vector<std::vector<std::string>> sentences = {{"a"}};
  std::vector<double> probs = {0.5, 0.5};
  CHECK_THROWS_AS(
      pick_summary_by_probability(probs, LengthBudget{BudgetUnit::kSentences, 1}, sentences),
      std::invalid_argument);
}

}  // TEST_SUITE
