#include "extsum/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace extsum {

Adadelta::Adadelta(const ParamSet& params, AdadeltaConfig config) : config_(config) {
  if (!(config_.rho > 0.0 && config_.rho < 1.0)) {
    throw std::invalid_argument("Adadelta: rho must be in (0, 1)");
  }
  if (!(config_.epsilon > 0.0)) {
    throw std::invalid_argument("Adadelta: epsilon must be positive");
  }
  grad_accum_.reserve(params.size());
  delta_accum_.reserve(params.size());
  for (const auto& p : params) {
    grad_accum_.push_back(Tensor::zeros_like(p->value));
    delta_accum_.push_back(Tensor::zeros_like(p->value));
  }
}

void Adadelta::step(ParamSet& params) {
  if (params.size() != grad_accum_.size()) {
    throw std::invalid_argument("Adadelta::step: parameter count changed since construction");
  }
  double rho = config_.rho, eps = config_.epsilon;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter& p = params[i];
    Tensor& eg2 = grad_accum_[i];
    Tensor& ed2 = delta_accum_[i];
    if (!p.grad.same_shape(eg2)) {
      throw std::invalid_argument("Adadelta::step: shape changed for " + p.name);
    }
    p.grad.require_finite("gradient of " + p.name);
    for (std::size_t k = 0; k < p.grad.size(); ++k) {
      double g = p.grad[k];
      eg2[k] = rho * eg2[k] + (1.0 - rho) * g * g;
      double dx = -(std::sqrt(ed2[k] + eps) / std::sqrt(eg2[k] + eps)) * g;
      ed2[k] = rho * ed2[k] + (1.0 - rho) * dx * dx;
      p.value[k] += dx;
    }
  }
}

double global_grad_norm(const ParamSet& params) {
  double acc = 0.0;
  for (const auto& p : params) {
    for (std::size_t k = 0; k < p->grad.size(); ++k) acc += p->grad[k] * p->grad[k];
  }
  return std::sqrt(acc);
}

double clip_global_norm(ParamSet& params, double threshold) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("clip_global_norm: threshold must be positive");
  }
  double norm = global_grad_norm(params);
  if (norm > threshold) {
    double scale = threshold / norm;
    for (auto& p : params) {
      for (std::size_t k = 0; k < p->grad.size(); ++k) p->grad[k] *= scale;
    }
  }
  return norm;
}

}  // namespace extsum
