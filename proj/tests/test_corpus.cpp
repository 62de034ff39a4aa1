#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "extsum/corpus.hpp"

#include "support/helpers.hpp"

using namespace extsum;

TEST_SUITE("corpus") {

TEST_CASE("document parsing normalizes text at ingestion") {
  CorpusLoadOptions options;
  Document doc = parse_document_json(
      R"({"id":"d1","sentences":["The CAT  sat","on\tthe MAT"],"summary":"Cat ON mat"})", 1,
      options);
  CHECK(doc.id == "d1");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0] == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(doc.sentences[1] == std::vector<std::string>{"on", "the", "mat"});
  CHECK(doc.summary == std::vector<std::string>{"cat", "on", "mat"});
  CHECK(doc.has_summary());
  CHECK_FALSE(doc.labels.has_value());
}

TEST_CASE("long sentences are cut to the token cap") {
  CorpusLoadOptions options;
  options.max_sentence_tokens = 3;
  Document doc =
      parse_document_json(R"({"id":"d","sentences":["one two three four five"]})", 1, options);
  CHECK(doc.sentences[0] == std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("blank sentences are dropped unless the document is labeled") {
  CorpusLoadOptions options;
  Document doc =
      parse_document_json(R"({"id":"d","sentences":["  ","real text","\t"]})", 1, options);
  REQUIRE(doc.sentences.size() == 1);
  CHECK(doc.sentences[0] == std::vector<std::string>{"real", "text"});

  // With labels the raw indices would shift, so this is an error instead.
  CHECK_THROWS_AS(parse_document_json(
                      R"({"id":"d","sentences":[" ","real text"],"labels":{"order":[0]}})", 4,
                      options),
                  ParseError);
}

TEST_CASE("documents without usable sentences are rejected") {
  CorpusLoadOptions options;
  CHECK_THROWS_AS(parse_document_json(R"({"id":"d","sentences":[]})", 1, options), ParseError);
  CHECK_THROWS_AS(parse_document_json(R"({"id":"d","sentences":["  "]})", 1, options), ParseError);
  CHECK_THROWS_AS(parse_document_json(R"({"sentences":["a"]})", 1, options), ParseError);
  CHECK_THROWS_AS(parse_document_json(R"({"id":"","sentences":["a"]})", 1, options), ParseError);
}

TEST_CASE("parse errors carry the line number") {
  CorpusLoadOptions options;
  try {
    parse_document_json("{not json", 17, options);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 17);
    CHECK(std::string(e.what()).find("line 17:") == 0);
  }
}

TEST_CASE("labels parse from order, binary, or both") {
  CorpusLoadOptions options;
  std::string base = R"({"id":"d","sentences":["a a","b b","c c"],)";

  Document from_order = parse_document_json(base + R"("labels":{"order":[2,0]}})", 1, options);
  REQUIRE(from_order.labels.has_value());
  CHECK(from_order.labels->order == std::vector<std::size_t>{2, 0});
  CHECK(from_order.labels->binary == std::vector<int>{1, 0, 1});

  Document from_binary = parse_document_json(base + R"("labels":{"binary":[0,1,1]}})", 1, options);
  REQUIRE(from_binary.labels.has_value());
  CHECK(from_binary.labels->order == std::vector<std::size_t>{1, 2});
  CHECK(from_binary.labels->binary == std::vector<int>{0, 1, 1});

  Document both = parse_document_json(
      base + R"("labels":{"order":[2,0],"binary":[1,0,1]}})", 1, options);
  REQUIRE(both.labels.has_value());
  CHECK(both.labels->order == std::vector<std::size_t>{2, 0});
}

TEST_CASE("inconsistent or malformed labels are rejected") {
  CorpusLoadOptions options;
  std::string base = R"({"id":"d","sentences":["a a","b b","c c"],)";
  CHECK_THROWS_AS(
      parse_document_json(base + R"("labels":{"order":[3]}})", 1, options), ParseError);
  CHECK_THROWS_AS(
      parse_document_json(base + R"("labels":{"order":[1,1]}})", 1, options), ParseError);
  CHECK_THROWS_AS(
      parse_document_json(base + R"("labels":{"binary":[1,0]}})", 1, options), ParseError);
  CHECK_THROWS_AS(
      parse_document_json(base + R"("labels":{"binary":[2,0,0]}})", 1, options), ParseError);
  CHECK_THROWS_AS(
      parse_document_json(base + R"("labels":{"order":[0],"binary":[0,1,0]}})", 1, options),
      ParseError);
}

TEST_CASE("corpus files load line by line and skip blanks") {
  testsupport::TempDir dir;
  std::string path = dir.file("corpus.jsonl");
  testsupport::write_file(path,
                          R"({"id":"a","sentences":["one two"]})"
                          "\n\n   \n"
                          R"({"id":"b","sentences":["three"],"summary":"three"})"
                          "\n");
  Corpus corpus = load_corpus(path);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.documents[0].id == "a");
  CHECK(corpus.documents[1].id == "b");
  CHECK(corpus.documents[1].has_summary());
}

TEST_CASE("loading rejects missing and empty files") {
  testsupport::TempDir dir;
  CHECK_THROWS_AS(load_corpus(dir.file("absent.jsonl")), std::runtime_error);
  std::string path = dir.file("blank.jsonl");
  testsupport::write_file(path, "\n\n");
  CHECK_THROWS_AS(load_corpus(path), std::runtime_error);
}

TEST_CASE("save and load round trip") {
  Corpus corpus;
  Document doc;
  doc.id = "doc-1";
  doc.sentences = {{"the", "cat"}, {"sat", "down"}};
  doc.summary = {"cat", "sat"};
  doc.labels = ExtractiveLabels{{1, 0}, {1, 1}};
  corpus.documents.push_back(doc);
  Document bare;
  bare.id = "doc-2";
  bare.sentences = {{"hello"}};
  corpus.documents.push_back(bare);

  testsupport::TempDir dir;
  std::string path = dir.file("out.jsonl");
  save_corpus(path, corpus);
  Corpus loaded = load_corpus(path);

  REQUIRE(loaded.size() == 2);
  CHECK(loaded.documents[0].id == "doc-1");
  CHECK(loaded.documents[0].sentences == corpus.documents[0].sentences);
  CHECK(loaded.documents[0].summary == corpus.documents[0].summary);
  REQUIRE(loaded.documents[0].labels.has_value());
  CHECK(loaded.documents[0].labels->order == std::vector<std::size_t>{1, 0});
  CHECK(loaded.documents[0].labels->binary == std::vector<int>{1, 1});
  CHECK(loaded.documents[1].id == "doc-2");
  CHECK_FALSE(loaded.documents[1].has_summary());
  CHECK_FALSE(loaded.documents[1].labels.has_value());
}

TEST_CASE("vocabulary ranks by frequency then alphabetically") {
  Corpus corpus;
  Document doc;
  doc.id = "d";
  doc.sentences = {{"b", "b", "b"}, {"c", "c", "a", "a"}, {"d"}};
  // Summary tokens must not count toward the vocabulary.
  doc.summary = {"zzz", "zzz", "zzz", "zzz"};
  corpus.documents.push_back(doc);

  Vocabulary vocab = Vocabulary::build(corpus, 100);
  REQUIRE(vocab.size() == 5);
  CHECK(vocab.token(0) == "<unk>");
  CHECK(vocab.token(1) == "b");   // three occurrences
  CHECK(vocab.token(2) == "a");   // two, alphabetically before c
  CHECK(vocab.token(3) == "c");
  CHECK(vocab.token(4) == "d");
  CHECK(vocab.lookup("zzz") == 0);
  CHECK(vocab.lookup("b") == 1);
  CHECK(vocab.lookup("never-seen") == 0);
}

TEST_CASE("vocabulary cap includes the unknown slot") {
  Corpus corpus;
  Document doc;
  doc.id = "d";
  doc.sentences = {{"a", "b", "c", "d", "e"}};
  corpus.documents.push_back(doc);
  Vocabulary vocab = Vocabulary::build(corpus, 3);
  CHECK(vocab.size() == 3);  // <unk> plus the two highest-ranked tokens
  CHECK(vocab.token(0) == "<unk>");
  CHECK(vocab.lookup("e") == 0);
  CHECK_THROWS_AS(Vocabulary::build(corpus, 0), std::invalid_argument);
}

TEST_CASE("vocabulary reconstruction validates its token list") {
  Vocabulary ok = Vocabulary::from_tokens({"<unk>", "a", "b"}, 10);
  CHECK(ok.size() == 3);
  CHECK(ok.lookup("a") == 1);
  CHECK_THROWS_AS(Vocabulary::from_tokens({"a", "b"}, 10), std::invalid_argument);
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<unk>", "a", "a"}, 10), std::invalid_argument);
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<unk>", "a", "b"}, 2), std::invalid_argument);
}

TEST_CASE("sentence shuffling permutes deterministically per document") {
  Document doc;
  doc.id = "stable-id";
  doc.sentences = {{"s0"}, {"s1"}, {"s2"}, {"s3"}, {"s4"}, {"s5"}};
  doc.summary = {"gold"};
  doc.labels = ExtractiveLabels{{0}, {1, 0, 0, 0, 0, 0}};

  Document a = shuffle_document_sentences(doc, 9);
  Document b = shuffle_document_sentences(doc, 9);
  CHECK(a.sentences == b.sentences);
  CHECK(a.summary == doc.summary);
  CHECK_FALSE(a.labels.has_value());  // indices lose their meaning

  auto sorted = a.sentences;
  std::sort(sorted.begin(), sorted.end());
  auto expected = doc.sentences;
  std::sort(expected.begin(), expected.end());
  CHECK(sorted == expected);

  Document c = shuffle_document_sentences(doc, 10);
  CHECK(c.sentences != a.sentences);  // seeds matter (6 sentences, 720 orders)
}

TEST_CASE("shuffling a corpus does not depend on document order") {
  Document d1;
  d1.id = "first";
  d1.sentences = {{"a"}, {"b"}, {"c"}, {"d"}, {"e"}};
  Document d2;
  d2.id = "second";
  d2.sentences = {{"p"}, {"q"}, {"r"}, {"s"}, {"t"}};

  Corpus forward;
  forward.documents = {d1, d2};
  Corpus backward;
  backward.documents = {d2, d1};

  Corpus sf = shuffle_corpus_sentences(forward, 77);
  Corpus sb = shuffle_corpus_sentences(backward, 77);
  CHECK(sf.documents[0].sentences == sb.documents[1].sentences);
  CHECK(sf.documents[1].sentences == sb.documents[0].sentences);
}

TEST_CASE("synthetic documents have the requested shape") {
  SyntheticSpec spec;
  spec.documents = 5;
  spec.aspects = 2;
  spec.sentences = 7;
  spec.tokens_per_sentence = 6;
  spec.gold_tokens_per_aspect = 4;
  spec.echoes = 1;
  spec.seed = 42;

  Corpus corpus = generate_synthetic_corpus(spec);
  REQUIRE(corpus.size() == 5);
  for (const Document& doc : corpus.documents) {
    CHECK(doc.sentences.size() == 7);
    for (const auto& sentence : doc.sentences) CHECK(sentence.size() == 6);
    CHECK(doc.summary.size() == 2 * 4);
    CHECK(doc.id.rfind("synth-", 0) == 0);
  }
}

TEST_CASE("structured documents lead with one salient sentence per aspect") {
  SyntheticSpec spec;
  spec.documents = 3;
  spec.aspects = 2;
  spec.sentences = 6;
  spec.tokens_per_sentence = 5;
  spec.gold_tokens_per_aspect = 3;
  spec.structured = true;
  spec.seed = 7;

  Corpus corpus = generate_synthetic_corpus(spec);
  for (const Document& doc : corpus.documents) {
    // The summary is the gold tokens of the leading sentences, in order.
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(doc.summary[a * 3 + i] == doc.sentences[a][i]);
      }
      // Aspect pools are disjoint by name.
      CHECK(doc.sentences[a][0].rfind("topic" + std::to_string(a), 0) == 0);
    }
  }
}

TEST_CASE("echo sentences reuse the head of a salient sentence") {
  SyntheticSpec spec;
  spec.documents = 2;
  spec.aspects = 1;
  spec.sentences = 4;
  spec.tokens_per_sentence = 6;
  spec.gold_tokens_per_aspect = 4;
  spec.echoes = 1;
  spec.structured = true;
  spec.seed = 11;

  Corpus corpus = generate_synthetic_corpus(spec);
  for (const Document& doc : corpus.documents) {
    // Some non-salient sentence starts with the first half of the gold tokens.
    bool found = false;
    for (std::size_t j = 1; j < doc.sentences.size(); ++j) {
      found = found || (doc.sentences[j][0] == doc.sentences[0][0] &&
                        doc.sentences[j][1] == doc.sentences[0][1]);
    }
    CHECK(found);
  }
}

TEST_CASE("background sentences come from the filler pool") {
  SyntheticSpec spec;
  spec.documents = 1;
  spec.aspects = 1;
  spec.sentences = 5;
  spec.tokens_per_sentence = 4;
  spec.gold_tokens_per_aspect = 2;
  spec.echoes = 0;
  spec.structured = true;
  spec.seed = 3;

  Corpus corpus = generate_synthetic_corpus(spec);
  const Document& doc = corpus.documents[0];
  for (std::size_t j = 1; j < doc.sentences.size(); ++j) {
    for (const auto& token : doc.sentences[j]) {
      CHECK(token.rfind("filler_", 0) == 0);
    }
  }
}

TEST_CASE("synthetic generation is reproducible and seed sensitive") {
  SyntheticSpec spec;
  spec.documents = 4;
  spec.seed = 123;
  Corpus a = generate_synthetic_corpus(spec);
  Corpus b = generate_synthetic_corpus(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t d = 0; d < a.size(); ++d) {
    CHECK(a.documents[d].sentences == b.documents[d].sentences);
    CHECK(a.documents[d].summary == b.documents[d].summary);
  }
  spec.seed = 124;
  Corpus c = generate_synthetic_corpus(spec);
  bool differs = false;
  for (std::size_t d = 0; d < a.size(); ++d) {
    differs = differs || a.documents[d].sentences != c.documents[d].sentences;
  }
  CHECK(differs);
}

TEST_CASE("synthetic spec validation") {
  SyntheticSpec spec;
  spec.documents = 0;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.gold_tokens_per_aspect = spec.tokens_per_sentence + 1;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.topic_pool = 1;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.sentences = 2;
  spec.aspects = 3;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.background_pool = 0;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec), std::invalid_argument);
}

TEST_CASE("synthetic corpora survive a save and load cycle") {
  SyntheticSpec spec;
  spec.documents = 3;
  spec.seed = 5;
  Corpus corpus = generate_synthetic_corpus(spec);
  testsupport::TempDir dir;
  std::string path = dir.file("synth.jsonl");
  save_corpus(path, corpus);
  Corpus loaded = load_corpus(path);
  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    CHECK(loaded.documents[d].id == corpus.documents[d].id);
    CHECK(loaded.documents[d].sentences == corpus.documents[d].sentences);
    CHECK(loaded.documents[d].summary == corpus.documents[d].summary);
  }
}

}  // TEST_SUITE
