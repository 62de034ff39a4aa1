#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "extsum/gru.hpp"
#include "extsum/params.hpp"

namespace extsum {

enum class Architecture { kClassifier, kSelector };
enum class Depth { kShallow, kDeep };
enum class Feature { kContent, kSalience, kPosition, kRedundancy };

// Score terms that stay active. Ablation turns exactly one off; at least one
// must remain.
struct FeatureSet {
  bool content = true;
  bool salience = true;
  bool position = true;
  bool redundancy = true;

  bool enabled(Feature f) const;
  void disable(Feature f);
  bool any() const { return content || salience || position || redundancy; }
};

struct ModelDims {
  std::size_t vocab = 0;  // filled from the vocabulary before building
  std::size_t embedding = 100;
  std::size_t word_hidden = 200;
  std::size_t sent_hidden = 200;
  std::size_t positional = 16;
  std::size_t max_positions = 100;
  std::size_t max_sentence_tokens = 50;

  // Sentence vectors concatenate the two directions.
  std::size_t sentence_dim() const { return 2 * sent_hidden; }
  std::size_t position_dim() const { return 2 * positional; }
};

struct ModelConfig {
  Architecture arch = Architecture::kClassifier;
  Depth depth = Depth::kDeep;
  ModelDims dims;
  FeatureSet features;
};

// All trainable state for one model. Pointers index into `set`, which owns
// the tensors; keep the struct pinned (it is move-only via ParamSet).
struct ModelParams {
  ModelConfig config;
  ParamSet set;

  Parameter* embedding = nullptr;
  GruParams word_fwd, word_bwd;
  GruParams sent_fwd, sent_bwd;
  GruParams deep;  // populated only for Depth::kDeep
  Parameter* pos_fwd = nullptr;
  Parameter* pos_bwd = nullptr;

  Parameter* content_probe = nullptr;   // row vector applied to the sentence
  Parameter* position_probe = nullptr;  // row vector applied to the position
  Parameter* content_weight = nullptr;
  Parameter* salience_weight = nullptr;
  Parameter* position_weight = nullptr;
  Parameter* redundancy_weight = nullptr;
  Parameter* score_bias = nullptr;
};

// Seeded construction: matrices uniform in the fan-based range, biases zero,
// the four term weights start at 1 and the score bias at 0.
ModelParams build_model(const ModelConfig& config, std::uint64_t seed);

// Re-binds the named-parameter pointers after a ParamSet move.
void rebind_model(ModelParams& model);

std::string architecture_name(Architecture a);
Architecture parse_architecture(const std::string& name);
std::string depth_name(Depth d);
Depth parse_depth(const std::string& name);
std::string feature_name(Feature f);
Feature parse_feature(const std::string& name);

}  // namespace extsum
