#pragma once

#include "extsum/graph.hpp"
#include "extsum/model.hpp"

namespace extsum {

// Raw values of each score term. `total` is content + salience + position
// - redundancy + bias, summed in exactly that order; disabled terms are
// stored as literal 0.
struct ScoreBreakdown {
  double content = 0.0;
  double salience = 0.0;
  double position = 0.0;
  double redundancy = 0.0;
  double bias = 0.0;
  double total = 0.0;
};

struct SentenceScore {
  Value node;  // scalar score in the graph
  ScoreBreakdown breakdown;
};

// content    = w_c * sigmoid(W_c h)
// salience   = w_s * sigmoid(cos(h, d))
// position   = w_p * sigmoid(W_p p)
// redundancy = w_r * sigmoid(cos(h, s))   (subtracted)
// Disabled terms are constant zero and leave their parameters untouched.
SentenceScore score_sentence(Graph& g, Value sentence, Value summary, Value doc, Value position,
                             ModelParams& model);

}  // namespace extsum
