#include "extsum/params.hpp"

#include <cmath>
#include <stdexcept>

namespace extsum {

Parameter& ParamSet::add(std::string name, Tensor init, bool regularized) {
  if (find(name) != nullptr) {
    throw std::invalid_argument("ParamSet: duplicate parameter name " + name);
  }
  items_.push_back(std::make_unique<Parameter>(std::move(name), std::move(init), regularized));
  return *items_.back();
}

Parameter* ParamSet::find(std::string_view name) {
  for (auto& p : items_) {
    if (p->name == name) return p.get();
  }
  return nullptr;
}

const Parameter* ParamSet::find(std::string_view name) const {
  for (const auto& p : items_) {
    if (p->name == name) return p.get();
  }
  return nullptr;
}

void ParamSet::zero_grad() {
  for (auto& p : items_) p->zero_grad();
}

std::size_t ParamSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : items_) n += p->value.size();
  return n;
}

Tensor glorot_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t({rows, cols});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
  return t;
}

}  // namespace extsum
