// extsum: end-to-end driver for the extractive summarization lab. Every
// subcommand reads and writes plain files; all failures surface as one
// diagnostic line on stderr and a non-zero exit.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "extsum/checkpoint.hpp"
#include "extsum/corpus.hpp"
#include "extsum/oracle.hpp"
#include "extsum/report.hpp"
#include "extsum/rouge.hpp"
#include "extsum/trainer.hpp"

namespace {

using namespace extsum;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) text.push_back(' ');
    text += tokens[i];
  }
  return text;
}

// Shared flag bundles. CLI11 keeps pointers into these, so they live for the
// whole parse.
struct BudgetFlags {
  std::string unit = "bytes";
  std::size_t limit = 0;

  LengthBudget resolve() const { return {parse_budget_unit(unit), limit}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget", limit, "summary length limit")->required();
    cmd->add_option("--budget-unit", unit, "bytes, words, or sentences");
  }
};

struct TrainFlags {
  std::string arch = "classifier";
  std::string depth = "deep";
  std::size_t batch_size = 32;
  double l2 = 1e-5;
  double clip = 5.0;
  std::size_t patience = 3;
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  std::string embeddings;
  std::size_t embedding_dim = 100;
  std::size_t word_hidden = 200;
  std::size_t sent_hidden = 200;
  std::size_t pos_dim = 16;
  std::size_t max_positions = 100;
  std::size_t max_tokens = 50;
  std::size_t vocab_cap = 150000;

  TrainConfig resolve() const {
    TrainConfig cfg;
    cfg.arch = parse_architecture(arch);
    cfg.depth = parse_depth(depth);
    cfg.batch_size = batch_size;
    cfg.l2 = l2;
    cfg.clip_threshold = clip;
    cfg.patience = patience;
    cfg.max_epochs = epochs;
    cfg.seed = seed;
    cfg.pretrained_embeddings = embeddings;
    cfg.dims.embedding = embedding_dim;
    cfg.dims.word_hidden = word_hidden;
    cfg.dims.sent_hidden = sent_hidden;
    cfg.dims.positional = pos_dim;
    cfg.dims.max_positions = max_positions;
    cfg.dims.max_sentence_tokens = max_tokens;
    return cfg;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--arch", arch, "classifier or selector");
    cmd->add_option("--depth", depth, "shallow or deep");
    cmd->add_option("--batch-size", batch_size, "documents per adadelta step");
    cmd->add_option("--l2", l2, "L2 strength on non-bias parameters");
    cmd->add_option("--clip", clip, "global gradient norm threshold");
    cmd->add_option("--patience", patience, "epochs without validation gain before stopping");
    cmd->add_option("--epochs", epochs, "maximum training epochs");
    cmd->add_option("--seed", seed, "rng seed");
    cmd->add_option("--embeddings", embeddings, "pretrained word vectors, word2vec text format");
    cmd->add_option("--embedding-dim", embedding_dim, "word embedding size");
    cmd->add_option("--word-hidden", word_hidden, "word-level GRU state size");
    cmd->add_option("--sent-hidden", sent_hidden, "sentence-level GRU state size");
    cmd->add_option("--pos-dim", pos_dim, "positional embedding size per direction");
    cmd->add_option("--max-positions", max_positions, "positional table size");
    cmd->add_option("--max-tokens", max_tokens, "sentence token cap at ingestion");
    cmd->add_option("--vocab-cap", vocab_cap, "vocabulary size cap, unknown slot included");
  }
};

// --arch/--depth on inference subcommands only assert what the checkpoint
// must contain; the stored config always wins.
void check_checkpoint_matches(const Checkpoint& ck, const std::string& arch,
                              const std::string& depth) {
  if (!arch.empty() && parse_architecture(arch) != ck.config.arch)
    throw std::runtime_error("architecture mismatch: checkpoint holds a " +
                             architecture_name(ck.config.arch) + ", --arch asked for " + arch);
  if (!depth.empty() && parse_depth(depth) != ck.config.depth)
    throw std::runtime_error("architecture mismatch: checkpoint holds a " +
                             depth_name(ck.config.depth) + " model, --depth asked for " + depth);
}

void emit_report(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    write_file(output_path, text);
}

int run(int argc, char** argv) {
  CLI::App app{"extractive summarization lab"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  SyntheticSpec spec;
  std::string synth_output;
  synth->add_option("--output", synth_output, "corpus JSONL path")->required();
  synth->add_option("--docs", spec.documents, "number of documents");
  synth->add_option("--aspects", spec.aspects, "salient sentences per document");
  synth->add_option("--sentences", spec.sentences, "sentences per document");
  synth->add_option("--tokens", spec.tokens_per_sentence, "tokens per sentence");
  synth->add_option("--gold-tokens", spec.gold_tokens_per_aspect, "gold tokens per aspect");
  synth->add_option("--topic-pool", spec.topic_pool, "tokens in each aspect pool");
  synth->add_option("--background-pool", spec.background_pool, "filler token pool size");
  synth->add_option("--echoes", spec.echoes, "near-duplicate salient copies");
  synth->add_flag("--structured,!--unstructured", spec.structured,
                  "salient sentences lead each document");
  synth->add_option("--seed", spec.seed, "rng seed");
  synth->add_option("--id-prefix", spec.id_prefix, "document id prefix");

  // label
  auto* label = app.add_subcommand("label", "attach greedy extractive labels");
  std::string label_input, label_output, label_objective = "mean12";
  BudgetFlags label_budget;
  label->add_option("--input", label_input, "corpus JSONL with gold summaries")->required();
  label->add_option("--output", label_output, "labeled corpus JSONL path")->required();
  label_budget.attach(label);
  label->add_option("--objective", label_objective, "r1, r2, rl, or mean12");

  // shuffle
  auto* shuffle = app.add_subcommand("shuffle", "permute sentence order per document");
  std::string shuffle_input, shuffle_output;
  std::uint64_t shuffle_seed = 1;
  shuffle->add_option("--input", shuffle_input, "corpus JSONL path")->required();
  shuffle->add_option("--output", shuffle_output, "shuffled corpus JSONL path")->required();
  shuffle->add_option("--seed", shuffle_seed, "rng seed");

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model and save a checkpoint");
  std::string train_path, val_path, train_ckpt;
  TrainFlags train_flags;
  train_cmd->add_option("--train", train_path, "labeled training corpus")->required();
  train_cmd->add_option("--val", val_path, "labeled validation corpus")->required();
  train_cmd->add_option("--checkpoint", train_ckpt, "checkpoint output path")->required();
  train_flags.attach(train_cmd);

  // summarize
  auto* summarize = app.add_subcommand("summarize", "pick sentences for every document");
  std::string sum_ckpt, sum_input, sum_output, sum_arch, sum_depth;
  BudgetFlags sum_budget;
  summarize->add_option("--checkpoint", sum_ckpt, "trained checkpoint")->required();
  summarize->add_option("--input", sum_input, "corpus JSONL path")->required();
  summarize->add_option("--output", sum_output, "summaries JSONL path (stdout when omitted)");
  sum_budget.attach(summarize);
  summarize->add_option("--arch", sum_arch, "assert the checkpoint architecture");
  summarize->add_option("--depth", sum_depth, "assert the checkpoint depth");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "limited-length Rouge against gold");
  std::string eval_ckpt, eval_input, eval_output, eval_jsonl, eval_arch, eval_depth;
  BudgetFlags eval_budget;
  bool eval_no_timestamp = false;
  evaluate_cmd->add_option("--checkpoint", eval_ckpt, "trained checkpoint")->required();
  evaluate_cmd->add_option("--input", eval_input, "corpus JSONL with gold summaries")->required();
  evaluate_cmd->add_option("--output", eval_output, "plain-text table path (stdout when omitted)");
  evaluate_cmd->add_option("--jsonl", eval_jsonl, "per-document scores JSONL path");
  eval_budget.attach(evaluate_cmd);
  evaluate_cmd->add_option("--arch", eval_arch, "assert the checkpoint architecture");
  evaluate_cmd->add_option("--depth", eval_depth, "assert the checkpoint depth");
  evaluate_cmd->add_flag("--no-timestamp", eval_no_timestamp, "omit the generation line");

  // ablate
  auto* ablate_cmd = app.add_subcommand("ablate", "retrain with one score term dropped at a time");
  std::string ab_train, ab_val, ab_test, ab_output;
  TrainFlags ab_flags;
  BudgetFlags ab_budget;
  bool ab_no_timestamp = false;
  ablate_cmd->add_option("--train", ab_train, "labeled training corpus")->required();
  ablate_cmd->add_option("--val", ab_val, "labeled validation corpus")->required();
  ablate_cmd->add_option("--test", ab_test, "test corpus with gold summaries")->required();
  ablate_cmd->add_option("--output", ab_output, "report path (stdout when omitted)");
  ab_flags.attach(ablate_cmd);
  ab_budget.attach(ablate_cmd);
  ablate_cmd->add_flag("--no-timestamp", ab_no_timestamp, "omit the generation line");

  // visualize
  auto* visualize = app.add_subcommand("visualize", "score heatmap for one document");
  std::string vis_ckpt, vis_input, vis_doc, vis_output, vis_arch, vis_depth;
  bool vis_no_timestamp = false;
  visualize->add_option("--checkpoint", vis_ckpt, "trained checkpoint")->required();
  visualize->add_option("--input", vis_input, "corpus JSONL path")->required();
  visualize->add_option("--doc-id", vis_doc, "document to render")->required();
  visualize->add_option("--output", vis_output, "HTML path; breakdown JSONL lands next to it")
      ->required();
  visualize->add_option("--arch", vis_arch, "assert the checkpoint architecture");
  visualize->add_option("--depth", vis_depth, "assert the checkpoint depth");
  visualize->add_flag("--no-timestamp", vis_no_timestamp, "omit the generation line");

  // weights
  auto* weights_cmd = app.add_subcommand("weights", "score term weights of a checkpoint");
  std::string w_ckpt, w_output;
  bool w_no_timestamp = false;
  weights_cmd->add_option("--checkpoint", w_ckpt, "trained checkpoint")->required();
  weights_cmd->add_option("--output", w_output, "report path (stdout when omitted)");
  weights_cmd->add_flag("--no-timestamp", w_no_timestamp, "omit the generation line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (synth->parsed()) {
    Corpus corpus = generate_synthetic_corpus(spec);
    save_corpus(synth_output, corpus);
    std::cout << "wrote " << corpus.size() << " documents to " << synth_output << "\n";
    return 0;
  }

  if (label->parsed()) {
    Corpus corpus = load_corpus(label_input);
    LabelStats stats =
        label_corpus(corpus, label_budget.resolve(), parse_rouge_variant(label_objective));
    save_corpus(label_output, corpus);
    std::cout << render_label_stats_text(stats);
    return 0;
  }

  if (shuffle->parsed()) {
    Corpus corpus = load_corpus(shuffle_input);
    save_corpus(shuffle_output, shuffle_corpus_sentences(corpus, shuffle_seed));
    std::cout << "wrote " << corpus.size() << " documents to " << shuffle_output << "\n";
    return 0;
  }

  if (train_cmd->parsed()) {
    Corpus train_corpus = load_corpus(train_path, {train_flags.vocab_cap, train_flags.max_tokens});
    Corpus val_corpus = load_corpus(val_path, {train_flags.vocab_cap, train_flags.max_tokens});
    Vocabulary vocab = Vocabulary::build(train_corpus, train_flags.vocab_cap);
    Checkpoint ck = train(train_flags.resolve(), train_corpus, val_corpus, vocab);
    for (std::size_t e = 0; e < ck.history.train_loss.size(); ++e) {
      std::printf("epoch %zu  train %.6f  val %.6f\n", e + 1, ck.history.train_loss[e],
                  ck.history.validation_cost[e]);
    }
    std::printf("best epoch: %zu\n", ck.history.best_epoch);
    save_checkpoint(train_ckpt, ck);
    std::cout << "checkpoint written to " << train_ckpt << "\n";
    return 0;
  }

  if (summarize->parsed()) {
    Checkpoint ck = load_checkpoint(sum_ckpt);
    check_checkpoint_matches(ck, sum_arch, sum_depth);
    Corpus corpus = load_corpus(sum_input, {ck.vocab.cap(), ck.config.dims.max_sentence_tokens});
    LengthBudget budget = sum_budget.resolve();
    std::string out;
    for (const Document& doc : corpus.documents) {
      std::vector<std::size_t> picked = summarize_document(ck, doc, budget);
      std::vector<std::string> tokens;
      for (std::size_t j : picked)
        tokens.insert(tokens.end(), doc.sentences[j].begin(), doc.sentences[j].end());
      nlohmann::json line{{"id", doc.id}, {"picked", picked}, {"summary", join_tokens(tokens)}};
      out += line.dump();
      out.push_back('\n');
    }
    emit_report(out, sum_output);
    return 0;
  }

  if (evaluate_cmd->parsed()) {
    Checkpoint ck = load_checkpoint(eval_ckpt);
    check_checkpoint_matches(ck, eval_arch, eval_depth);
    Corpus corpus = load_corpus(eval_input, {ck.vocab.cap(), ck.config.dims.max_sentence_tokens});
    EvaluationReport report = evaluate(ck, corpus, eval_budget.resolve());
    std::string stamp = eval_no_timestamp ? std::string() : current_timestamp();
    emit_report(render_evaluation_text(report, stamp), eval_output);
    if (!eval_jsonl.empty()) write_file(eval_jsonl, render_evaluation_jsonl(report));
    return 0;
  }

  if (ablate_cmd->parsed()) {
    CorpusLoadOptions load_opts{ab_flags.vocab_cap, ab_flags.max_tokens};
    Corpus train_corpus = load_corpus(ab_train, load_opts);
    Corpus val_corpus = load_corpus(ab_val, load_opts);
    Corpus test_corpus = load_corpus(ab_test, load_opts);
    Vocabulary vocab = Vocabulary::build(train_corpus, ab_flags.vocab_cap);
    AblationReport report = ablate(ab_flags.resolve(), train_corpus, val_corpus, test_corpus,
                                   vocab, ab_budget.resolve());
    std::string stamp = ab_no_timestamp ? std::string() : current_timestamp();
    emit_report(render_ablation_text(report, stamp), ab_output);
    return 0;
  }

  if (visualize->parsed()) {
    Checkpoint ck = load_checkpoint(vis_ckpt);
    check_checkpoint_matches(ck, vis_arch, vis_depth);
    Corpus corpus = load_corpus(vis_input, {ck.vocab.cap(), ck.config.dims.max_sentence_tokens});
    const Document* doc = nullptr;
    for (const Document& d : corpus.documents)
      if (d.id == vis_doc) doc = &d;
    if (!doc) throw std::runtime_error("document " + vis_doc + " not found in " + vis_input);
    std::vector<SentenceInspection> rows = inspect_document(ck, *doc);
    std::string stamp = vis_no_timestamp ? std::string() : current_timestamp();
    write_file(vis_output, render_heatmap_html(ck, *doc, rows, stamp));
    std::string breakdown =
        std::filesystem::path(vis_output).replace_extension(".jsonl").string();
    if (breakdown == vis_output)
      throw std::runtime_error("--output must not end in .jsonl; that slot holds the breakdown");
    write_file(breakdown, render_inspection_jsonl(*doc, rows));
    std::cout << "wrote " << vis_output << " and " << breakdown << "\n";
    return 0;
  }

  if (weights_cmd->parsed()) {
    Checkpoint ck = load_checkpoint(w_ckpt);
    std::string stamp = w_no_timestamp ? std::string() : current_timestamp();
    emit_report(render_weights_text(collect_weights(ck), stamp), w_output);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
