#include <benchmark/benchmark.h>

#include <vector>

#include "extsum/classifier.hpp"
#include "extsum/corpus.hpp"
#include "extsum/encoder.hpp"
#include "extsum/graph.hpp"
#include "extsum/optimizer.hpp"
#include "extsum/oracle.hpp"
#include "extsum/rouge.hpp"
#include "extsum/selector.hpp"

namespace {

using namespace extsum;

// Mid-sized fixture: 10 sentences x 12 tokens, dims well below paper scale
// but large enough that the graph work dominates the setup.
struct DocFixture {
  ModelParams model;
  std::vector<std::vector<std::size_t>> ids;
  std::vector<int> labels;
  std::vector<std::size_t> order;

  explicit DocFixture(Architecture arch) : model(make_model(arch)) {
    Rng rng(42);
    ids.resize(10);
    for (auto& sentence : ids) {
      for (int t = 0; t < 12; ++t) sentence.push_back(rng.index(500));
    }
    labels.assign(10, 0);
    labels[0] = labels[3] = labels[7] = 1;
    order = {0, 3, 7};
  }

  static ModelParams make_model(Architecture arch) {
    ModelConfig mc;
    mc.arch = arch;
    mc.depth = Depth::kDeep;
    mc.dims.vocab = 500;
    mc.dims.embedding = 32;
    mc.dims.word_hidden = 24;
    mc.dims.sent_hidden = 24;
    mc.dims.positional = 8;
    mc.dims.max_positions = 16;
    mc.dims.max_sentence_tokens = 16;
    return build_model(mc, 3);
  }
};

void BM_ClassifierForwardBackward(benchmark::State& state) {
  DocFixture fixture(Architecture::kClassifier);
  for (auto _ : state) {
    Graph g;
    DocumentEncoding enc = encode(g, fixture.ids, fixture.model);
    ClassifierForward fwd = classifier_forward(g, enc, fixture.model, &fixture.labels);
    Value loss = classifier_loss(g, fwd.prob_nodes, fixture.labels);
    g.backward(loss);
    benchmark::DoNotOptimize(g.scalar(loss));
    fixture.model.set.zero_grad();
  }
}
BENCHMARK(BM_ClassifierForwardBackward);

void BM_SelectorForwardBackward(benchmark::State& state) {
  DocFixture fixture(Architecture::kSelector);
  for (auto _ : state) {
    Graph g;
    DocumentEncoding enc = encode(g, fixture.ids, fixture.model);
    SelectorLoss loss = selector_loss(g, enc, fixture.order, fixture.model);
    g.backward(loss.node);
    benchmark::DoNotOptimize(g.scalar(loss.node));
    fixture.model.set.zero_grad();
  }
}
BENCHMARK(BM_SelectorForwardBackward);

void BM_RougeLLongPair(benchmark::State& state) {
  Rng rng(7);
  std::vector<std::string> candidate, reference;
  for (int i = 0; i < 200; ++i) {
    candidate.push_back("w" + std::to_string(rng.index(50)));
    reference.push_back("w" + std::to_string(rng.index(50)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rouge_l_recall(candidate, reference));
  }
}
BENCHMARK(BM_RougeLLongPair);

void BM_GreedyLabeler(benchmark::State& state) {
  Rng rng(9);
  std::vector<std::vector<std::string>> sentences(12);
  for (auto& sentence : sentences) {
    for (int t = 0; t < 10; ++t) sentence.push_back("w" + std::to_string(rng.index(40)));
  }
  std::vector<std::string> gold;
  for (int t = 0; t < 20; ++t) gold.push_back("w" + std::to_string(rng.index(40)));
  LengthBudget budget{BudgetUnit::kSentences, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_extractive_labels(sentences, gold, budget));
  }
}
BENCHMARK(BM_GreedyLabeler);

void BM_AdadeltaStep(benchmark::State& state) {
  DocFixture fixture(Architecture::kClassifier);
  Adadelta opt(fixture.model.set);
  for (Parameter* p : {fixture.model.embedding, fixture.model.content_probe})
    p->grad.fill(1e-3);
  for (auto _ : state) {
    opt.step(fixture.model.set);
  }
}
BENCHMARK(BM_AdadeltaStep);

}  // namespace

BENCHMARK_MAIN();
