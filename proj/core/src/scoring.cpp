#include "extsum/scoring.hpp"

#include <stdexcept>

namespace extsum {

SentenceScore score_sentence(Graph& g, Value sentence, Value summary, Value doc, Value position,
                             ModelParams& model) {
  const ModelDims& dims = model.config.dims;
  if (g.value(sentence).size() != dims.sentence_dim() ||
      g.value(summary).size() != dims.sentence_dim() ||
      g.value(doc).size() != dims.sentence_dim()) {
    throw std::invalid_argument("score_sentence: representation width mismatch");
  }
  if (g.value(position).size() != dims.position_dim()) {
    throw std::invalid_argument("score_sentence: positional width mismatch");
  }
  const FeatureSet& on = model.config.features;

  Value content = on.content
                      ? g.scale(g.sigmoid(g.pick(g.matvec(g.param(*model.content_probe), sentence), 0)),
                                g.param(*model.content_weight))
                      : g.constant_scalar(0.0);
  Value salience = on.salience
                       ? g.scale(g.sigmoid(g.cosine(sentence, doc)), g.param(*model.salience_weight))
                       : g.constant_scalar(0.0);
  Value pos = on.position
                  ? g.scale(g.sigmoid(g.pick(g.matvec(g.param(*model.position_probe), position), 0)),
                            g.param(*model.position_weight))
                  : g.constant_scalar(0.0);
  Value redundancy = on.redundancy
                         ? g.scale(g.sigmoid(g.cosine(sentence, summary)),
                                   g.param(*model.redundancy_weight))
                         : g.constant_scalar(0.0);

  Value total =
      g.add(g.sub(g.add(g.add(content, salience), pos), redundancy), g.param(*model.score_bias));

  SentenceScore out;
  out.node = total;
  out.breakdown.content = g.scalar(content);
  out.breakdown.salience = g.scalar(salience);
  out.breakdown.position = g.scalar(pos);
  out.breakdown.redundancy = g.scalar(redundancy);
  out.breakdown.bias = model.score_bias->value.scalar_value();
  out.breakdown.total = g.scalar(total);
  return out;
}

}  // namespace extsum
