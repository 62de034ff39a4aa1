#include "extsum/encoder.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace extsum {

Value encode_sentence(Graph& g, std::span<const std::size_t> token_ids, Parameter& embedding,
                      const GruParams& fwd, const GruParams& bwd, std::size_t max_tokens) {
  if (token_ids.empty()) {
    throw std::invalid_argument("encode_sentence: sentence has no tokens");
  }
  if (token_ids.size() > max_tokens) {
    throw std::invalid_argument("encode_sentence: sentence length " +
                                std::to_string(token_ids.size()) + " exceeds limit " +
                                std::to_string(max_tokens));
  }
  std::size_t vocab_rows = embedding.value.rows();
  Value table = g.param(embedding);
  std::vector<Value> inputs;
  inputs.reserve(token_ids.size());
  for (std::size_t id : token_ids) {
    if (id >= vocab_rows) {
      throw std::out_of_range("encode_sentence: token id " + std::to_string(id) +
                              " outside vocabulary of " + std::to_string(vocab_rows));
    }
    inputs.push_back(g.row(table, id));
  }

  std::size_t n = inputs.size();
  std::vector<Value> fwd_states(n), bwd_states(n);
  Value h = g.zeros({fwd.hidden_dim()});
  for (std::size_t t = 0; t < n; ++t) {
    h = gru_step(g, inputs[t], h, fwd);
    fwd_states[t] = h;
  }
  h = g.zeros({bwd.hidden_dim()});
  for (std::size_t t = n; t-- > 0;) {
    h = gru_step(g, inputs[t], h, bwd);
    bwd_states[t] = h;
  }

  std::vector<Value> steps(n);
  for (std::size_t t = 0; t < n; ++t) steps[t] = g.concat(fwd_states[t], bwd_states[t]);
  return g.mean(steps);
}

Value positional_embedding(Graph& g, std::size_t index, std::size_t doc_len, Parameter& pos_fwd,
                           Parameter& pos_bwd, std::size_t max_positions) {
  if (index >= doc_len) {
    throw std::out_of_range("positional_embedding: index " + std::to_string(index) +
                            " outside a document of " + std::to_string(doc_len));
  }
  std::size_t fwd_row = std::min(index, max_positions - 1);
  std::size_t bwd_row = std::min(doc_len - 1 - index, max_positions - 1);
  return g.concat(g.row(g.param(pos_fwd), fwd_row), g.row(g.param(pos_bwd), bwd_row));
}

DocumentEncoding encode_document(Graph& g, const std::vector<Value>& sentence_vectors,
                                 const GruParams& fwd, const GruParams& bwd, Parameter& pos_fwd,
                                 Parameter& pos_bwd, std::size_t max_positions) {
  if (sentence_vectors.empty()) {
    throw std::invalid_argument("encode_document: document has no sentences");
  }
  std::size_t n = sentence_vectors.size();
  std::vector<Value> fwd_states(n), bwd_states(n);
  Value h = g.zeros({fwd.hidden_dim()});
  for (std::size_t j = 0; j < n; ++j) {
    h = gru_step(g, sentence_vectors[j], h, fwd);
    fwd_states[j] = h;
  }
  h = g.zeros({bwd.hidden_dim()});
  for (std::size_t j = n; j-- > 0;) {
    h = gru_step(g, sentence_vectors[j], h, bwd);
    bwd_states[j] = h;
  }

  DocumentEncoding enc;
  enc.sentence_repr.resize(n);
  enc.positions.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    enc.sentence_repr[j] = g.concat(fwd_states[j], bwd_states[j]);
    enc.positions[j] = positional_embedding(g, j, n, pos_fwd, pos_bwd, max_positions);
  }
  enc.doc_repr = g.mean(enc.sentence_repr);
  return enc;
}

DocumentEncoding encode(Graph& g, const std::vector<std::vector<std::size_t>>& sentence_tokens,
                        ModelParams& model) {
  std::vector<Value> sentence_vectors;
  sentence_vectors.reserve(sentence_tokens.size());
  for (const auto& tokens : sentence_tokens) {
    sentence_vectors.push_back(encode_sentence(g, tokens, *model.embedding, model.word_fwd,
                                               model.word_bwd,
                                               model.config.dims.max_sentence_tokens));
  }
  return encode_document(g, sentence_vectors, model.sent_fwd, model.sent_bwd, *model.pos_fwd,
                         *model.pos_bwd, model.config.dims.max_positions);
}

std::vector<std::vector<std::size_t>> tokens_to_ids(const Document& doc, const Vocabulary& vocab) {
  std::vector<std::vector<std::size_t>> ids;
  ids.reserve(doc.sentences.size());
  for (const auto& sentence : doc.sentences) {
    std::vector<std::size_t> row;
    row.reserve(sentence.size());
    for (const auto& token : sentence) row.push_back(vocab.lookup(token));
    ids.push_back(std::move(row));
  }
  return ids;
}

std::size_t load_pretrained_embeddings(const std::string& path, const Vocabulary& vocab,
                                       Parameter& embedding) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
  std::size_t dim = embedding.value.cols();
  std::size_t applied = 0;
  std::string line;
  std::size_t line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string token;
    row >> token;
    if (first) {
      first = false;
      // "count dim" header: two integers and nothing else.
      std::size_t declared_dim;
      std::istringstream probe(line);
      std::size_t count;
      if (probe >> count >> declared_dim && probe.eof()) {
        if (declared_dim != dim) {
          throw std::runtime_error("embeddings file is " + std::to_string(declared_dim) +
                                   "-dimensional, model expects " + std::to_string(dim));
        }
        continue;
      }
    }
    std::vector<double> values;
    values.reserve(dim);
    double v;
    while (row >> v) values.push_back(v);
    if (values.size() != dim) {
      throw std::runtime_error("embeddings line " + std::to_string(line_number) + " has " +
                               std::to_string(values.size()) + " values, expected " +
                               std::to_string(dim));
    }
    std::size_t index = vocab.lookup(token);
    if (index == 0 && token != Vocabulary::kUnknown) continue;
    for (std::size_t c = 0; c < dim; ++c) embedding.value.at(index, c) = values[c];
    ++applied;
  }
  embedding.value.require_finite("pretrained embeddings");
  return applied;
}

}  // namespace extsum
