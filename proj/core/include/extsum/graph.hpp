#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "extsum/params.hpp"
#include "extsum/tensor.hpp"

namespace extsum {

// Handle into a Graph. Only meaningful for the graph that produced it.
struct Value {
  std::uint32_t id = std::numeric_limits<std::uint32_t>::max();
  bool valid() const { return id != std::numeric_limits<std::uint32_t>::max(); }
};

// Reverse-mode computation graph over Tensors. Nodes are appended in
// topological order by construction, so backward() is a single reverse sweep.
// After backward(), gradients of every reachable Parameter leaf have been
// accumulated (+=) into Parameter::grad; unreachable parameters are left
// untouched, so their contribution is zero once grads start from zero.
class Graph {
 public:
  Value constant(Tensor t);
  Value constant_scalar(double v);
  Value zeros(std::vector<std::size_t> shape);
  // Leaf bound to a parameter. Repeated calls with the same parameter return
  // the same node.
  Value param(Parameter& p);

  Value add(Value a, Value b);
  Value sub(Value a, Value b);
  Value neg(Value x);
  Value sum(std::span<const Value> terms);
  Value mul(Value a, Value b);       // elementwise
  Value one_minus(Value x);          // 1 - x, elementwise
  Value scale(Value x, Value s);     // tensor times scalar node
  Value scale(Value x, double c);
  Value matvec(Value matrix, Value x);
  Value dot(Value a, Value b);
  Value sigmoid(Value x);
  Value tanh(Value x);
  Value log(Value x);
  Value clamp(Value x, double lo, double hi);
  Value concat(Value a, Value b);
  Value mean(std::span<const Value> items);
  Value softmax(Value scores);
  Value cosine(Value a, Value b);
  Value pick(Value v, std::size_t index);        // scalar element
  Value row(Value matrix, std::size_t index);    // matrix row as vector
  Value stack(std::span<const Value> scalars);   // scalars -> vector

  const Tensor& value(Value v) const { return node(v).value; }
  double scalar(Value v) const { return node(v).value.scalar_value(); }

  // Gradient buffer of a node, valid after backward(). Nodes past the loss or
  // off the loss path hold zeros.
  const Tensor& gradient(Value v) const;

  // Seeds d(loss)/d(loss) = 1 and sweeps nodes in reverse creation order.
  // loss must be a single-element node.
  void backward(Value loss);

  std::size_t node_count() const { return nodes_.size(); }
  void clear();

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::function<void(Graph&, std::uint32_t)> back;
    bool needs_grad = false;
  };

  Node& node(Value v);
  const Node& node(Value v) const;
  Tensor& grad(std::uint32_t id) { return nodes_[id].grad; }
  Value emit(Tensor value, bool needs_grad, std::function<void(Graph&, std::uint32_t)> back);
  void check(Value v, const char* op) const;

  std::vector<Node> nodes_;
  std::vector<std::pair<Parameter*, std::uint32_t>> param_nodes_;
  std::unordered_map<const Parameter*, std::uint32_t> param_lookup_;
};

}  // namespace extsum
