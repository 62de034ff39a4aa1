#include "extsum/gru.hpp"

#include <array>
#include <stdexcept>

namespace extsum {

GruParams add_gru(ParamSet& set, const std::string& prefix, std::size_t input_dim,
                  std::size_t hidden_dim, Rng& rng) {
  if (input_dim == 0 || hidden_dim == 0) {
    throw std::invalid_argument("add_gru: dimensions must be positive");
  }
  GruParams p;
  p.input_update = &set.add(prefix + ".input_update", glorot_matrix(hidden_dim, input_dim, rng));
  p.state_update = &set.add(prefix + ".state_update", glorot_matrix(hidden_dim, hidden_dim, rng));
  p.bias_update = &set.add(prefix + ".bias_update", Tensor({hidden_dim}), false);
  p.input_reset = &set.add(prefix + ".input_reset", glorot_matrix(hidden_dim, input_dim, rng));
  p.state_reset = &set.add(prefix + ".state_reset", glorot_matrix(hidden_dim, hidden_dim, rng));
  p.bias_reset = &set.add(prefix + ".bias_reset", Tensor({hidden_dim}), false);
  p.input_candidate =
      &set.add(prefix + ".input_candidate", glorot_matrix(hidden_dim, input_dim, rng));
  p.state_candidate =
      &set.add(prefix + ".state_candidate", glorot_matrix(hidden_dim, hidden_dim, rng));
  p.bias_candidate = &set.add(prefix + ".bias_candidate", Tensor({hidden_dim}), false);
  return p;
}

Value gru_step(Graph& g, Value input, Value prev_state, const GruParams& p) {
  const Tensor& x = g.value(input);
  const Tensor& h = g.value(prev_state);
  if (x.size() != p.input_dim()) {
    throw std::invalid_argument("gru_step: input size " + std::to_string(x.size()) +
                                " does not match input dim " + std::to_string(p.input_dim()));
  }
  if (h.size() != p.hidden_dim()) {
    throw std::invalid_argument("gru_step: state size " + std::to_string(h.size()) +
                                " does not match hidden dim " + std::to_string(p.hidden_dim()));
  }
  x.require_finite("gru_step input");
  h.require_finite("gru_step state");

  std::array<Value, 3> z_terms = {g.matvec(g.param(*p.input_update), input),
                                  g.matvec(g.param(*p.state_update), prev_state),
                                  g.param(*p.bias_update)};
  Value z = g.sigmoid(g.sum(z_terms));

  std::array<Value, 3> r_terms = {g.matvec(g.param(*p.input_reset), input),
                                  g.matvec(g.param(*p.state_reset), prev_state),
                                  g.param(*p.bias_reset)};
  Value r = g.sigmoid(g.sum(r_terms));

  std::array<Value, 3> c_terms = {g.matvec(g.param(*p.input_candidate), input),
                                  g.matvec(g.param(*p.state_candidate), g.mul(r, prev_state)),
                                  g.param(*p.bias_candidate)};
  Value candidate = g.tanh(g.sum(c_terms));

  return g.add(g.mul(g.one_minus(z), prev_state), g.mul(z, candidate));
}

}  // namespace extsum
