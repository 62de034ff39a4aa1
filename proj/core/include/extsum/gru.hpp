#pragma once

#include <string>

#include "extsum/graph.hpp"
#include "extsum/params.hpp"

namespace extsum {

// One gated recurrent unit: three input matrices, three state matrices,
// three gate biases. Pointers refer into the owning ParamSet.
struct GruParams {
  Parameter* input_update = nullptr;
  Parameter* state_update = nullptr;
  Parameter* bias_update = nullptr;
  Parameter* input_reset = nullptr;
  Parameter* state_reset = nullptr;
  Parameter* bias_reset = nullptr;
  Parameter* input_candidate = nullptr;
  Parameter* state_candidate = nullptr;
  Parameter* bias_candidate = nullptr;

  std::size_t input_dim() const { return input_update->value.cols(); }
  std::size_t hidden_dim() const { return input_update->value.rows(); }
};

// Registers the nine parameters under `prefix.` names; matrices get uniform
// fan-based init, biases start at zero and are excluded from L2.
GruParams add_gru(ParamSet& set, const std::string& prefix, std::size_t input_dim,
                  std::size_t hidden_dim, Rng& rng);

// h' = (1 - z) * h + z * tanh(W_h x + U_h (r * h) + b_h)
// with update gate z and reset gate r both sigmoid-activated.
Value gru_step(Graph& g, Value input, Value prev_state, const GruParams& p);

}  // namespace extsum
