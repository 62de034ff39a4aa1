#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "extsum/rng.hpp"
#include "extsum/tensor.hpp"

namespace extsum {

// Trainable tensor with a gradient buffer of the same shape. `regularized`
// is false for biases, which are excluded from L2.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  bool regularized = true;

  Parameter(std::string n, Tensor v, bool reg)
      : name(std::move(n)), value(std::move(v)), grad(Tensor::zeros_like(value)),
        regularized(reg) {}

  void zero_grad() { grad.fill(0.0); }
};

// Owning, insertion-ordered collection of parameters. Pointers handed out by
// add() stay stable for the life of the set.
class ParamSet {
 public:
  Parameter& add(std::string name, Tensor init, bool regularized = true);

  std::size_t size() const { return items_.size(); }
  Parameter& operator[](std::size_t i) { return *items_[i]; }
  const Parameter& operator[](std::size_t i) const { return *items_[i]; }

  Parameter* find(std::string_view name);
  const Parameter* find(std::string_view name) const;

  void zero_grad();
  std::size_t scalar_count() const;

  auto begin() { return items_.begin(); }
  auto end() { return items_.end(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<std::unique_ptr<Parameter>> items_;
};

// Uniform in +-sqrt(6 / (fan_in + fan_out)); fan_in = cols, fan_out = rows.
Tensor glorot_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace extsum
