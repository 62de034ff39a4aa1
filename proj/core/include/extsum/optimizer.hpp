#pragma once

#include <vector>

#include "extsum/params.hpp"

namespace extsum {

struct AdadeltaConfig {
  double rho = 0.95;
  double epsilon = 1e-6;
};

// Adadelta with per-element squared-gradient and squared-update accumulators.
// The state is bound to the parameter set shape it was constructed from.
class Adadelta {
 public:
  Adadelta() = default;
  explicit Adadelta(const ParamSet& params, AdadeltaConfig config = {});

  // Applies one update in place from Parameter::grad. Gradients must be
  // finite; shapes must match the construction-time set.
  void step(ParamSet& params);

  const AdadeltaConfig& config() const { return config_; }
  std::vector<Tensor>& grad_accum() { return grad_accum_; }
  std::vector<Tensor>& delta_accum() { return delta_accum_; }
  const std::vector<Tensor>& grad_accum() const { return grad_accum_; }
  const std::vector<Tensor>& delta_accum() const { return delta_accum_; }

 private:
  AdadeltaConfig config_;
  std::vector<Tensor> grad_accum_;
  std::vector<Tensor> delta_accum_;
};

double global_grad_norm(const ParamSet& params);

// Scales every gradient by threshold/norm when the global L2 norm exceeds the
// threshold. Returns the pre-clip norm. Idempotent: a second call is a no-op.
double clip_global_norm(ParamSet& params, double threshold);

}  // namespace extsum
