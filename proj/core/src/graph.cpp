#include "extsum/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace extsum {

namespace {

std::string shape_pair(const Tensor& a, const Tensor& b) {
  return a.shape_string() + " and " + b.shape_string();
}

}  // namespace

Graph::Node& Graph::node(Value v) { return nodes_[v.id]; }
const Graph::Node& Graph::node(Value v) const { return nodes_[v.id]; }

void Graph::check(Value v, const char* op) const {
  if (!v.valid() || v.id >= nodes_.size()) {
    throw std::logic_error(std::string(op) + ": value handle does not belong to this graph");
  }
}

Value Graph::emit(Tensor value, bool needs_grad,
                  std::function<void(Graph&, std::uint32_t)> back) {
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  if (needs_grad) n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return Value{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Value Graph::constant(Tensor t) { return emit(std::move(t), false, nullptr); }

Value Graph::constant_scalar(double v) { return constant(Tensor::scalar(v)); }

Value Graph::zeros(std::vector<std::size_t> shape) { return constant(Tensor(std::move(shape))); }

Value Graph::param(Parameter& p) {
  auto it = param_lookup_.find(&p);
  if (it != param_lookup_.end()) return Value{it->second};
  Value v = emit(p.value, true, nullptr);
  param_lookup_.emplace(&p, v.id);
  param_nodes_.emplace_back(&p, v.id);
  return v;
}

Value Graph::add(Value a, Value b) {
  check(a, "add");
  check(b, "add");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (!ta.same_shape(tb)) {
    throw std::invalid_argument("add: shape mismatch " + shape_pair(ta, tb));
  }
  Tensor out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += tb[i];
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  return emit(std::move(out), ng, [aid, bid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) {
      ga[i] += go[i];
      gb[i] += go[i];
    }
  });
}

Value Graph::sub(Value a, Value b) {
  check(a, "sub");
  check(b, "sub");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (!ta.same_shape(tb)) {
    throw std::invalid_argument("sub: shape mismatch " + shape_pair(ta, tb));
  }
  Tensor out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tb[i];
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  return emit(std::move(out), ng, [aid, bid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) {
      ga[i] += go[i];
      gb[i] -= go[i];
    }
  });
}

Value Graph::neg(Value x) {
  check(x, "neg");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i];
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] -= go[i];
  });
}

Value Graph::sum(std::span<const Value> terms) {
  if (terms.empty()) throw std::invalid_argument("sum: no terms");
  check(terms[0], "sum");
  Tensor out = node(terms[0]).value;
  bool ng = node(terms[0]).needs_grad;
  std::vector<std::uint32_t> ids{terms[0].id};
  for (std::size_t t = 1; t < terms.size(); ++t) {
    check(terms[t], "sum");
    const Tensor& v = node(terms[t]).value;
    if (!v.same_shape(out)) {
      throw std::invalid_argument("sum: shape mismatch " + shape_pair(out, v));
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    ng = ng || node(terms[t]).needs_grad;
    ids.push_back(terms[t].id);
  }
  return emit(std::move(out), ng, [ids = std::move(ids)](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    for (std::uint32_t id : ids) {
      Tensor& gt = g.nodes_[id].grad;
      for (std::size_t i = 0; i < go.size(); ++i) gt[i] += go[i];
    }
  });
}

Value Graph::mul(Value a, Value b) {
  check(a, "mul");
  check(b, "mul");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (!ta.same_shape(tb)) {
    throw std::invalid_argument("mul: shape mismatch " + shape_pair(ta, tb));
  }
  Tensor out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= tb[i];
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  return emit(std::move(out), ng, [aid, bid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& va = g.nodes_[aid].value;
    const Tensor& vb = g.nodes_[bid].value;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) {
      ga[i] += go[i] * vb[i];
      gb[i] += go[i] * va[i];
    }
  });
}

Value Graph::one_minus(Value x) {
  check(x, "one_minus");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - out[i];
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] -= go[i];
  });
}

Value Graph::scale(Value x, Value s) {
  check(x, "scale");
  check(s, "scale");
  const Tensor& ts = node(s).value;
  if (ts.size() != 1) {
    throw std::invalid_argument("scale: multiplier must be a scalar, got " + ts.shape_string());
  }
  double c = ts[0];
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= c;
  bool ng = node(x).needs_grad || node(s).needs_grad;
  auto xid = x.id, sid = s.id;
  return emit(std::move(out), ng, [xid, sid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& vx = g.nodes_[xid].value;
    double c = g.nodes_[sid].value[0];
    Tensor& gx = g.nodes_[xid].grad;
    Tensor& gs = g.nodes_[sid].grad;
    double acc = 0.0;
    for (std::size_t i = 0; i < go.size(); ++i) {
      gx[i] += go[i] * c;
      acc += go[i] * vx[i];
    }
    gs[0] += acc;
  });
}

Value Graph::scale(Value x, double c) {
  check(x, "scale");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= c;
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid, c](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * c;
  });
}

Value Graph::matvec(Value matrix, Value x) {
  check(matrix, "matvec");
  check(x, "matvec");
  const Tensor& m = node(matrix).value;
  const Tensor& v = node(x).value;
  if (m.rank() != 2 || v.rank() != 1 || m.cols() != v.size()) {
    throw std::invalid_argument("matvec: shape mismatch " + shape_pair(m, v));
  }
  std::size_t rows = m.rows(), cols = m.cols();
  Tensor out({rows});
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    const double* mr = m.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += mr[c] * v[c];
    out[r] = acc;
  }
  bool ng = node(matrix).needs_grad || node(x).needs_grad;
  auto mid = matrix.id, xid = x.id;
  return emit(std::move(out), ng, [mid, xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& m = g.nodes_[mid].value;
    const Tensor& v = g.nodes_[xid].value;
    Tensor& gm = g.nodes_[mid].grad;
    Tensor& gx = g.nodes_[xid].grad;
    std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t r = 0; r < rows; ++r) {
      double gr = go[r];
      const double* mr = m.data() + r * cols;
      double* gmr = gm.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) {
        gmr[c] += gr * v[c];
        gx[c] += gr * mr[c];
      }
    }
  });
}

Value Graph::dot(Value a, Value b) {
  check(a, "dot");
  check(b, "dot");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (ta.rank() != 1 || !ta.same_shape(tb)) {
    throw std::invalid_argument("dot: shape mismatch " + shape_pair(ta, tb));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < ta.size(); ++i) acc += ta[i] * tb[i];
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  return emit(Tensor::scalar(acc), ng, [aid, bid](Graph& g, std::uint32_t self) {
    double go = g.nodes_[self].grad[0];
    const Tensor& va = g.nodes_[aid].value;
    const Tensor& vb = g.nodes_[bid].value;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    for (std::size_t i = 0; i < va.size(); ++i) {
      ga[i] += go * vb[i];
      gb[i] += go * va[i];
    }
  });
}

Value Graph::sigmoid(Value x) {
  check(x, "sigmoid");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-out[i]));
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& y = g.nodes_[self].value;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * y[i] * (1.0 - y[i]);
  });
}

Value Graph::tanh(Value x) {
  check(x, "tanh");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& y = g.nodes_[self].value;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * (1.0 - y[i] * y[i]);
  });
}

Value Graph::log(Value x) {
  check(x, "log");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(out[i]);
  auto xid = x.id;
  return emit(std::move(out), node(x).needs_grad, [xid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& v = g.nodes_[xid].value;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i] / v[i];
  });
}

Value Graph::clamp(Value x, double lo, double hi) {
  check(x, "clamp");
  if (!(lo <= hi)) throw std::invalid_argument("clamp: lo must not exceed hi");
  Tensor out = node(x).value;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = out[i] < lo ? lo : (out[i] > hi ? hi : out[i]);
  }
  auto xid = x.id;
  // Pass-through gradient inside [lo, hi], zero outside.
  return emit(std::move(out), node(x).needs_grad, [xid, lo, hi](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& v = g.nodes_[xid].value;
    Tensor& gx = g.nodes_[xid].grad;
    for (std::size_t i = 0; i < go.size(); ++i) {
      if (v[i] >= lo && v[i] <= hi) gx[i] += go[i];
    }
  });
}

Value Graph::concat(Value a, Value b) {
  check(a, "concat");
  check(b, "concat");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (ta.rank() != 1 || tb.rank() != 1) {
    throw std::invalid_argument("concat: expects vectors, got " + shape_pair(ta, tb));
  }
  Tensor out({ta.size() + tb.size()});
  for (std::size_t i = 0; i < ta.size(); ++i) out[i] = ta[i];
  for (std::size_t i = 0; i < tb.size(); ++i) out[ta.size() + i] = tb[i];
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  std::size_t split = ta.size();
  return emit(std::move(out), ng, [aid, bid, split](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    for (std::size_t i = 0; i < split; ++i) ga[i] += go[i];
    for (std::size_t i = split; i < go.size(); ++i) gb[i - split] += go[i];
  });
}

Value Graph::mean(std::span<const Value> items) {
  if (items.empty()) throw std::invalid_argument("mean: no items");
  check(items[0], "mean");
  Tensor out = node(items[0]).value;
  bool ng = node(items[0]).needs_grad;
  std::vector<std::uint32_t> ids{items[0].id};
  for (std::size_t t = 1; t < items.size(); ++t) {
    check(items[t], "mean");
    const Tensor& v = node(items[t]).value;
    if (!v.same_shape(out)) {
      throw std::invalid_argument("mean: shape mismatch " + shape_pair(out, v));
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    ng = ng || node(items[t]).needs_grad;
    ids.push_back(items[t].id);
  }
  double inv = 1.0 / static_cast<double>(items.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= inv;
  return emit(std::move(out), ng, [ids = std::move(ids), inv](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    for (std::uint32_t id : ids) {
      Tensor& gt = g.nodes_[id].grad;
      for (std::size_t i = 0; i < go.size(); ++i) gt[i] += go[i] * inv;
    }
  });
}

Value Graph::softmax(Value scores) {
  check(scores, "softmax");
  const Tensor& s = node(scores).value;
  if (s.rank() != 1 || s.size() == 0) {
    throw std::invalid_argument("softmax: expects a non-empty vector, got " + s.shape_string());
  }
  double mx = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) mx = std::max(mx, s[i]);
  Tensor out({s.size()});
  double z = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = std::exp(s[i] - mx);
    z += out[i];
  }
  for (std::size_t i = 0; i < s.size(); ++i) out[i] /= z;
  auto sid = scores.id;
  return emit(std::move(out), node(scores).needs_grad, [sid](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    const Tensor& p = g.nodes_[self].value;
    Tensor& gs = g.nodes_[sid].grad;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += go[i] * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) gs[i] += p[i] * (go[i] - acc);
  });
}

Value Graph::cosine(Value a, Value b) {
  check(a, "cosine");
  check(b, "cosine");
  const Tensor& ta = node(a).value;
  const Tensor& tb = node(b).value;
  if (ta.rank() != 1 || !ta.same_shape(tb)) {
    throw std::invalid_argument("cosine: shape mismatch " + shape_pair(ta, tb));
  }
  double dot_ab = 0.0, na2 = 0.0, nb2 = 0.0;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    dot_ab += ta[i] * tb[i];
    na2 += ta[i] * ta[i];
    nb2 += tb[i] * tb[i];
  }
  // A zero-norm side makes the similarity 0 with zero gradient on both sides.
  if (na2 == 0.0 || nb2 == 0.0) {
    return emit(Tensor::scalar(0.0), false, nullptr);
  }
  double na = std::sqrt(na2), nb = std::sqrt(nb2);
  double v = dot_ab / (na * nb);
  bool ng = node(a).needs_grad || node(b).needs_grad;
  auto aid = a.id, bid = b.id;
  return emit(Tensor::scalar(v), ng, [aid, bid, na, nb, v](Graph& g, std::uint32_t self) {
    double go = g.nodes_[self].grad[0];
    const Tensor& va = g.nodes_[aid].value;
    const Tensor& vb = g.nodes_[bid].value;
    Tensor& ga = g.nodes_[aid].grad;
    Tensor& gb = g.nodes_[bid].grad;
    double inv = 1.0 / (na * nb);
    double sa = v / (na * na);
    double sb = v / (nb * nb);
    for (std::size_t i = 0; i < va.size(); ++i) {
      ga[i] += go * (vb[i] * inv - sa * va[i]);
      gb[i] += go * (va[i] * inv - sb * vb[i]);
    }
  });
}

Value Graph::pick(Value v, std::size_t index) {
  check(v, "pick");
  const Tensor& t = node(v).value;
  if (index >= t.size()) {
    throw std::out_of_range("pick: index " + std::to_string(index) + " out of " +
                            std::to_string(t.size()));
  }
  auto vid = v.id;
  return emit(Tensor::scalar(t[index]), node(v).needs_grad,
              [vid, index](Graph& g, std::uint32_t self) {
                g.nodes_[vid].grad[index] += g.nodes_[self].grad[0];
              });
}

Value Graph::row(Value matrix, std::size_t index) {
  check(matrix, "row");
  const Tensor& m = node(matrix).value;
  if (m.rank() != 2) throw std::invalid_argument("row: expects a matrix, got " + m.shape_string());
  if (index >= m.rows()) {
    throw std::out_of_range("row: index " + std::to_string(index) + " out of " +
                            std::to_string(m.rows()));
  }
  std::size_t cols = m.cols();
  Tensor out({cols});
  for (std::size_t c = 0; c < cols; ++c) out[c] = m.at(index, c);
  auto mid = matrix.id;
  return emit(std::move(out), node(matrix).needs_grad,
              [mid, index, cols](Graph& g, std::uint32_t self) {
                const Tensor& go = g.nodes_[self].grad;
                double* gm = g.nodes_[mid].grad.data() + index * cols;
                for (std::size_t c = 0; c < cols; ++c) gm[c] += go[c];
              });
}

Value Graph::stack(std::span<const Value> scalars) {
  if (scalars.empty()) throw std::invalid_argument("stack: no items");
  Tensor out({scalars.size()});
  bool ng = false;
  std::vector<std::uint32_t> ids;
  ids.reserve(scalars.size());
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    check(scalars[i], "stack");
    const Tensor& t = node(scalars[i]).value;
    if (t.size() != 1) {
      throw std::invalid_argument("stack: item " + std::to_string(i) + " is not a scalar");
    }
    out[i] = t[0];
    ng = ng || node(scalars[i]).needs_grad;
    ids.push_back(scalars[i].id);
  }
  return emit(std::move(out), ng, [ids = std::move(ids)](Graph& g, std::uint32_t self) {
    const Tensor& go = g.nodes_[self].grad;
    for (std::size_t i = 0; i < ids.size(); ++i) g.nodes_[ids[i]].grad[0] += go[i];
  });
}

const Tensor& Graph::gradient(Value v) const {
  const Node& n = node(v);
  if (n.grad.size() != n.value.size()) {
    throw std::logic_error("gradient: backward has not run over this node");
  }
  return n.grad;
}

void Graph::backward(Value loss) {
  check(loss, "backward");
  Node& ln = node(loss);
  if (ln.value.size() != 1) {
    throw std::invalid_argument("backward: loss must be a single element, got shape " +
                                ln.value.shape_string());
  }
  for (Node& n : nodes_) n.grad = Tensor::zeros_like(n.value);
  ln.grad[0] = 1.0;
  for (std::uint32_t i = loss.id + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.needs_grad && n.back) n.back(*this, i);
  }
  for (auto& [p, id] : param_nodes_) {
    if (id > loss.id) continue;
    const Tensor& g = nodes_[id].grad;
    for (std::size_t k = 0; k < g.size(); ++k) p->grad[k] += g[k];
  }
}

void Graph::clear() {
  nodes_.clear();
  param_nodes_.clear();
  param_lookup_.clear();
}

}  // namespace extsum
