#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace extsum {

// Selection order plus the equivalent binary mask. binary[i] == 1 exactly
// when i appears in order.
struct ExtractiveLabels {
  std::vector<std::size_t> order;
  std::vector<int> binary;
};

struct Document {
  std::string id;
  std::vector<std::vector<std::string>> sentences;  // normalized tokens
  std::vector<std::string> summary;                 // gold tokens, may be empty
  std::optional<ExtractiveLabels> labels;

  bool has_summary() const { return !summary.empty(); }
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
};

// Frequency-ranked token table capped at a fixed size. Index 0 is the
// unknown-token slot; every out-of-table lookup maps there.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary build(const Corpus& corpus, std::size_t cap);
  static Vocabulary from_tokens(std::vector<std::string> tokens, std::size_t cap);

  std::size_t lookup(const std::string& token) const;
  std::size_t size() const { return tokens_.size(); }
  std::size_t cap() const { return cap_; }
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  static constexpr const char* kUnknown = "<unk>";

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t cap_ = 0;
};

struct CorpusLoadOptions {
  std::size_t vocab_cap = 150000;
  std::size_t max_sentence_tokens = 50;  // longer sentences are cut, not dropped
};

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

// JSONL, one document per line: {"id", "sentences", "summary"?, "labels"?}.
// Text is normalized (lowercased, whitespace-tokenized) at ingestion.
Corpus load_corpus(const std::string& path, const CorpusLoadOptions& options = {});
Document parse_document_json(const std::string& line, std::size_t line_number,
                             const CorpusLoadOptions& options);
void save_corpus(const std::string& path, const Corpus& corpus);

// Seeded per document by mixing the run seed with a hash of the id, so a
// document's permutation does not depend on corpus order. Labels are dropped
// because sentence indices lose their meaning; the summary is kept.
Document shuffle_document_sentences(const Document& doc, std::uint64_t seed);
Corpus shuffle_corpus_sentences(const Corpus& corpus, std::uint64_t seed);

// Synthetic corpus: each document covers `aspects` topics drawn from disjoint
// token pools. One salient sentence per aspect carries that aspect's gold
// tokens; the gold summary is their concatenation. Background sentences and
// optional near-duplicate echo sentences are filler. Structured placement
// puts salient sentences at fixed positions; unstructured placement scatters
// them uniformly.
struct SyntheticSpec {
  std::size_t documents = 100;
  std::size_t aspects = 3;                  // salient sentences per document
  std::size_t sentences = 10;               // total sentences per document
  std::size_t tokens_per_sentence = 8;
  std::size_t gold_tokens_per_aspect = 4;   // salient tokens echoed into the summary
  std::size_t topic_pool = 30;              // tokens per aspect pool
  std::size_t background_pool = 60;
  std::size_t echoes = 1;                   // degraded copies of salient sentences
  bool structured = true;                   // salient sentences lead the document
  std::uint64_t seed = 1;
  std::string id_prefix = "synth";
};

Corpus generate_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace extsum
