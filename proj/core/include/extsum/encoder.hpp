#pragma once

#include <span>
#include <vector>

#include "extsum/corpus.hpp"
#include "extsum/graph.hpp"
#include "extsum/model.hpp"

namespace extsum {

// Per-document graph handles produced by the encoder stack.
struct DocumentEncoding {
  std::vector<Value> sentence_repr;  // one per sentence, concatenated directions
  Value doc_repr;                    // mean of sentence_repr
  std::vector<Value> positions;      // forward/backward positional rows, concatenated
};

// Bidirectional word-level pass; the two direction states at each timestep
// are concatenated and mean-pooled into one sentence vector.
Value encode_sentence(Graph& g, std::span<const std::size_t> token_ids, Parameter& embedding,
                      const GruParams& fwd, const GruParams& bwd, std::size_t max_tokens);

// Trainable absolute-position rows, one table per direction. Indices clamp to
// the last row, so arbitrarily long documents stay in range.
Value positional_embedding(Graph& g, std::size_t index, std::size_t doc_len, Parameter& pos_fwd,
                           Parameter& pos_bwd, std::size_t max_positions);

// Sentence-level bidirectional pass over precomputed sentence vectors.
DocumentEncoding encode_document(Graph& g, const std::vector<Value>& sentence_vectors,
                                 const GruParams& fwd, const GruParams& bwd, Parameter& pos_fwd,
                                 Parameter& pos_bwd, std::size_t max_positions);

// Full pipeline from token ids.
DocumentEncoding encode(Graph& g, const std::vector<std::vector<std::size_t>>& sentence_tokens,
                        ModelParams& model);

std::vector<std::vector<std::size_t>> tokens_to_ids(const Document& doc, const Vocabulary& vocab);

// Text embedding file: optional "count dim" header, then one token per line
// followed by its values. Rows whose token is in the vocabulary overwrite the
// matching embedding row; everything else keeps its random init. Returns the
// number of rows applied.
std::size_t load_pretrained_embeddings(const std::string& path, const Vocabulary& vocab,
                                       Parameter& embedding);

}  // namespace extsum
