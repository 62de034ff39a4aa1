#include "extsum/model.hpp"

#include <stdexcept>

namespace extsum {

bool FeatureSet::enabled(Feature f) const {
  switch (f) {
    case Feature::kContent: return content;
    case Feature::kSalience: return salience;
    case Feature::kPosition: return position;
    case Feature::kRedundancy: return redundancy;
  }
  throw std::logic_error("FeatureSet::enabled: unknown feature");
}

void FeatureSet::disable(Feature f) {
  switch (f) {
    case Feature::kContent: content = false; return;
    case Feature::kSalience: salience = false; return;
    case Feature::kPosition: position = false; return;
    case Feature::kRedundancy: redundancy = false; return;
  }
  throw std::logic_error("FeatureSet::disable: unknown feature");
}

ModelParams build_model(const ModelConfig& config, std::uint64_t seed) {
  const ModelDims& d = config.dims;
  if (d.vocab == 0) throw std::invalid_argument("build_model: vocab size must be positive");
  if (d.embedding == 0 || d.word_hidden == 0 || d.sent_hidden == 0 || d.positional == 0) {
    throw std::invalid_argument("build_model: dimensions must be positive");
  }
  if (d.max_positions == 0) {
    throw std::invalid_argument("build_model: max_positions must be positive");
  }
  if (!config.features.any()) {
    throw std::invalid_argument("build_model: at least one score term must stay enabled");
  }

  ModelParams m;
  m.config = config;
  Rng rng(seed);

  m.embedding = &m.set.add("embedding", glorot_matrix(d.vocab, d.embedding, rng));
  m.word_fwd = add_gru(m.set, "word_fwd", d.embedding, d.word_hidden, rng);
  m.word_bwd = add_gru(m.set, "word_bwd", d.embedding, d.word_hidden, rng);
  m.sent_fwd = add_gru(m.set, "sent_fwd", 2 * d.word_hidden, d.sent_hidden, rng);
  m.sent_bwd = add_gru(m.set, "sent_bwd", 2 * d.word_hidden, d.sent_hidden, rng);
  if (config.depth == Depth::kDeep) {
    m.deep = add_gru(m.set, "deep", d.sentence_dim(), d.sentence_dim(), rng);
  }
  m.pos_fwd = &m.set.add("pos_fwd", glorot_matrix(d.max_positions, d.positional, rng));
  m.pos_bwd = &m.set.add("pos_bwd", glorot_matrix(d.max_positions, d.positional, rng));

  m.content_probe = &m.set.add("content_probe", glorot_matrix(1, d.sentence_dim(), rng));
  m.position_probe = &m.set.add("position_probe", glorot_matrix(1, d.position_dim(), rng));
  m.content_weight = &m.set.add("content_weight", Tensor::scalar(1.0));
  m.salience_weight = &m.set.add("salience_weight", Tensor::scalar(1.0));
  m.position_weight = &m.set.add("position_weight", Tensor::scalar(1.0));
  m.redundancy_weight = &m.set.add("redundancy_weight", Tensor::scalar(1.0));
  m.score_bias = &m.set.add("score_bias", Tensor::scalar(0.0), false);
  return m;
}

namespace {

GruParams rebind_gru(ParamSet& set, const std::string& prefix) {
  GruParams p;
  p.input_update = set.find(prefix + ".input_update");
  p.state_update = set.find(prefix + ".state_update");
  p.bias_update = set.find(prefix + ".bias_update");
  p.input_reset = set.find(prefix + ".input_reset");
  p.state_reset = set.find(prefix + ".state_reset");
  p.bias_reset = set.find(prefix + ".bias_reset");
  p.input_candidate = set.find(prefix + ".input_candidate");
  p.state_candidate = set.find(prefix + ".state_candidate");
  p.bias_candidate = set.find(prefix + ".bias_candidate");
  if (!p.input_update || !p.state_update || !p.bias_update || !p.input_reset || !p.state_reset ||
      !p.bias_reset || !p.input_candidate || !p.state_candidate || !p.bias_candidate) {
    throw std::logic_error("rebind_model: missing parameters for " + prefix);
  }
  return p;
}

}  // namespace

void rebind_model(ModelParams& model) {
  ParamSet& set = model.set;
  model.embedding = set.find("embedding");
  model.word_fwd = rebind_gru(set, "word_fwd");
  model.word_bwd = rebind_gru(set, "word_bwd");
  model.sent_fwd = rebind_gru(set, "sent_fwd");
  model.sent_bwd = rebind_gru(set, "sent_bwd");
  if (model.config.depth == Depth::kDeep) model.deep = rebind_gru(set, "deep");
  model.pos_fwd = set.find("pos_fwd");
  model.pos_bwd = set.find("pos_bwd");
  model.content_probe = set.find("content_probe");
  model.position_probe = set.find("position_probe");
  model.content_weight = set.find("content_weight");
  model.salience_weight = set.find("salience_weight");
  model.position_weight = set.find("position_weight");
  model.redundancy_weight = set.find("redundancy_weight");
  model.score_bias = set.find("score_bias");
  if (!model.embedding || !model.pos_fwd || !model.pos_bwd || !model.content_probe ||
      !model.position_probe || !model.content_weight || !model.salience_weight ||
      !model.position_weight || !model.redundancy_weight || !model.score_bias) {
    throw std::logic_error("rebind_model: parameter set is incomplete");
  }
}

std::string architecture_name(Architecture a) {
  return a == Architecture::kClassifier ? "classifier" : "selector";
}

Architecture parse_architecture(const std::string& name) {
  if (name == "classifier") return Architecture::kClassifier;
  if (name == "selector") return Architecture::kSelector;
  throw std::invalid_argument("unknown architecture: " + name);
}

std::string depth_name(Depth d) { return d == Depth::kShallow ? "shallow" : "deep"; }

Depth parse_depth(const std::string& name) {
  if (name == "shallow") return Depth::kShallow;
  if (name == "deep") return Depth::kDeep;
  throw std::invalid_argument("unknown depth: " + name);
}

std::string feature_name(Feature f) {
  switch (f) {
    case Feature::kContent: return "content";
    case Feature::kSalience: return "salience";
    case Feature::kPosition: return "position";
    case Feature::kRedundancy: return "redundancy";
  }
  throw std::logic_error("feature_name: unknown feature");
}

Feature parse_feature(const std::string& name) {
  if (name == "content") return Feature::kContent;
  if (name == "salience") return Feature::kSalience;
  if (name == "position") return Feature::kPosition;
  if (name == "redundancy") return Feature::kRedundancy;
  throw std::invalid_argument("unknown feature: " + name);
}

}  // namespace extsum
