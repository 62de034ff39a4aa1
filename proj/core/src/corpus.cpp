#include "extsum/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "extsum/rng.hpp"
#include "extsum/rouge.hpp"

namespace extsum {

namespace {

using nlohmann::json;

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

ExtractiveLabels parse_labels(const json& j, std::size_t sentence_count, std::size_t line_number) {
  ExtractiveLabels labels;
  if (j.contains("order")) {
    for (const auto& v : j.at("order")) {
      auto idx = v.get<long long>();
      if (idx < 0 || static_cast<std::size_t>(idx) >= sentence_count) {
        throw ParseError(line_number, "label index " + std::to_string(idx) + " out of range");
      }
      labels.order.push_back(static_cast<std::size_t>(idx));
    }
  }
  std::vector<int> binary;
  if (j.contains("binary")) {
    for (const auto& v : j.at("binary")) {
      int b = v.get<int>();
      if (b != 0 && b != 1) throw ParseError(line_number, "binary labels must be 0 or 1");
      binary.push_back(b);
    }
    if (binary.size() != sentence_count) {
      throw ParseError(line_number, "binary label length does not match sentence count");
    }
  }
  if (labels.order.empty() && !binary.empty()) {
    for (std::size_t i = 0; i < binary.size(); ++i) {
      if (binary[i]) labels.order.push_back(i);
    }
  }
  {
    std::vector<int> derived(sentence_count, 0);
    for (std::size_t idx : labels.order) {
      if (derived[idx]) throw ParseError(line_number, "duplicate index in label order");
      derived[idx] = 1;
    }
    if (!binary.empty() && binary != derived) {
      throw ParseError(line_number, "binary labels disagree with label order");
    }
    labels.binary = std::move(derived);
  }
  return labels;
}

}  // namespace

Document parse_document_json(const std::string& line, std::size_t line_number,
                             const CorpusLoadOptions& options) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(line_number, e.what());
  }
  if (!j.is_object()) throw ParseError(line_number, "document must be a JSON object");

  Document doc;
  try {
    doc.id = j.at("id").get<std::string>();
    if (doc.id.empty()) throw ParseError(line_number, "empty document id");
    const auto& sentences = j.at("sentences");
    if (!sentences.is_array()) throw ParseError(line_number, "sentences must be an array");
    bool dropped_empty = false;
    for (const auto& s : sentences) {
      std::vector<std::string> tokens = normalize_tokens(s.get<std::string>());
      if (tokens.empty()) {
        dropped_empty = true;
        continue;
      }
      if (tokens.size() > options.max_sentence_tokens) {
        tokens.resize(options.max_sentence_tokens);
      }
      doc.sentences.push_back(std::move(tokens));
    }
    if (doc.sentences.empty()) throw ParseError(line_number, "document has no sentences");
    if (j.contains("summary")) {
      doc.summary = normalize_tokens(j.at("summary").get<std::string>());
    }
    if (j.contains("labels")) {
      if (dropped_empty) {
        // Indices in the file refer to the raw sentence list; once a blank
        // sentence is dropped they no longer line up.
        throw ParseError(line_number, "labeled document contains an empty sentence");
      }
      doc.labels = parse_labels(j.at("labels"), doc.sentences.size(), line_number);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(line_number, e.what());
  }
  return doc;
}

Corpus load_corpus(const std::string& path, const CorpusLoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  Corpus corpus;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    corpus.documents.push_back(parse_document_json(line, line_number, options));
  }
  if (corpus.empty()) throw std::runtime_error("corpus is empty: " + path);
  return corpus;
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const Document& doc : corpus.documents) {
    json j;
    j["id"] = doc.id;
    json sentences = json::array();
    for (const auto& tokens : doc.sentences) sentences.push_back(join_tokens(tokens));
    j["sentences"] = std::move(sentences);
    if (doc.has_summary()) j["summary"] = join_tokens(doc.summary);
    if (doc.labels.has_value()) {
      j["labels"] = {{"order", doc.labels->order}, {"binary", doc.labels->binary}};
    }
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing corpus file: " + path);
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("Vocabulary::build: cap must be positive");
  std::unordered_map<std::string, std::size_t> counts;
  for (const Document& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence) ++counts[token];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary vocab;
  vocab.cap_ = cap;
  vocab.tokens_.push_back(kUnknown);
  for (const auto& [token, count] : ranked) {
    if (vocab.tokens_.size() >= cap) break;
    vocab.tokens_.push_back(token);
  }
  for (std::size_t i = 0; i < vocab.tokens_.size(); ++i) vocab.index_[vocab.tokens_[i]] = i;
  return vocab;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens, std::size_t cap) {
  if (tokens.empty() || tokens[0] != kUnknown) {
    throw std::invalid_argument("Vocabulary::from_tokens: slot 0 must be " + std::string(kUnknown));
  }
  if (cap == 0 || tokens.size() > cap) {
    throw std::invalid_argument("Vocabulary::from_tokens: token list exceeds cap");
  }
  Vocabulary vocab;
  vocab.cap_ = cap;
  vocab.tokens_ = std::move(tokens);
  for (std::size_t i = 0; i < vocab.tokens_.size(); ++i) {
    if (!vocab.index_.emplace(vocab.tokens_[i], i).second) {
      throw std::invalid_argument("Vocabulary::from_tokens: duplicate token " + vocab.tokens_[i]);
    }
  }
  return vocab;
}

std::size_t Vocabulary::lookup(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? 0 : it->second;
}

Document shuffle_document_sentences(const Document& doc, std::uint64_t seed) {
  Document out;
  out.id = doc.id;
  out.summary = doc.summary;
  out.sentences = doc.sentences;
  Rng rng(mix_seed(seed, fnv1a64(doc.id)));
  rng.shuffle(out.sentences);
  return out;
}

Corpus shuffle_corpus_sentences(const Corpus& corpus, std::uint64_t seed) {
  Corpus out;
  out.documents.reserve(corpus.size());
  for (const Document& doc : corpus.documents) {
    out.documents.push_back(shuffle_document_sentences(doc, seed));
  }
  return out;
}

Corpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.documents == 0) throw std::invalid_argument("synthetic corpus: documents must be positive");
  if (spec.aspects == 0) throw std::invalid_argument("synthetic corpus: aspects must be positive");
  if (spec.gold_tokens_per_aspect == 0 || spec.gold_tokens_per_aspect > spec.tokens_per_sentence) {
    throw std::invalid_argument("synthetic corpus: gold tokens per aspect must fit the sentence");
  }
  if (spec.topic_pool < spec.gold_tokens_per_aspect) {
    throw std::invalid_argument("synthetic corpus: topic pool smaller than gold tokens per aspect");
  }
  if (spec.sentences < spec.aspects + spec.echoes) {
    throw std::invalid_argument("synthetic corpus: sentence count cannot hold aspects and echoes");
  }
  std::size_t background_count = spec.sentences - spec.aspects - spec.echoes;
  if (background_count > 0 && spec.background_pool == 0) {
    throw std::invalid_argument("synthetic corpus: background sentences need a background pool");
  }

  auto topic_token = [](std::size_t aspect, std::size_t i) {
    return "topic" + std::to_string(aspect) + "_" + std::to_string(i);
  };

  Corpus corpus;
  corpus.documents.reserve(spec.documents);
  for (std::size_t d = 0; d < spec.documents; ++d) {
    Rng rng(mix_seed(spec.seed, d));
    Document doc;
    doc.id = spec.id_prefix + "-" + std::to_string(d);

    std::vector<std::vector<std::string>> salient(spec.aspects);
    for (std::size_t a = 0; a < spec.aspects; ++a) {
      std::vector<std::size_t> pool(spec.topic_pool);
      std::iota(pool.begin(), pool.end(), 0);
      rng.shuffle(pool);
      std::vector<std::string>& sentence = salient[a];
      for (std::size_t i = 0; i < spec.gold_tokens_per_aspect; ++i) {
        sentence.push_back(topic_token(a, pool[i]));
      }
      doc.summary.insert(doc.summary.end(), sentence.begin(), sentence.end());
      while (sentence.size() < spec.tokens_per_sentence) {
        sentence.push_back(topic_token(a, rng.index(spec.topic_pool)));
      }
    }

    // Echoes repeat a salient sentence with the tail of its gold tokens
    // swapped out, so they overlap the summary without matching it.
    std::vector<std::vector<std::string>> filler;
    for (std::size_t e = 0; e < spec.echoes; ++e) {
      std::size_t a = e % spec.aspects;
      std::vector<std::string> echo = salient[a];
      for (std::size_t i = spec.gold_tokens_per_aspect / 2; i < spec.gold_tokens_per_aspect; ++i) {
        echo[i] = topic_token(a, rng.index(spec.topic_pool));
      }
      filler.push_back(std::move(echo));
    }
    for (std::size_t b = 0; b < background_count; ++b) {
      std::vector<std::string> sentence;
      for (std::size_t i = 0; i < spec.tokens_per_sentence; ++i) {
        sentence.push_back("filler_" + std::to_string(rng.index(spec.background_pool)));
      }
      filler.push_back(std::move(sentence));
    }

    if (spec.structured) {
      doc.sentences = std::move(salient);
      rng.shuffle(filler);
      for (auto& sentence : filler) doc.sentences.push_back(std::move(sentence));
    } else {
      doc.sentences = std::move(salient);
      for (auto& sentence : filler) doc.sentences.push_back(std::move(sentence));
      rng.shuffle(doc.sentences);
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace extsum
