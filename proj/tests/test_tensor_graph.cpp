#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "extsum/gradcheck.hpp"
#include "extsum/graph.hpp"
#include "extsum/rng.hpp"

using namespace extsum;

TEST_SUITE("tensor_graph") {

TEST_CASE("tensor shape bookkeeping") {
  Tensor t({2, 3});
  CHECK(t.size() == 6);
  CHECK(t.rank() == 2);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  t.at(1, 2) = 4.5;
  CHECK(t[5] == 4.5);
  CHECK(Tensor::scalar(2.0).scalar_value() == 2.0);
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("tensor rejects non-finite values") {
  CHECK_THROWS_AS(Tensor({2}, {1.0, std::nan("")}), std::runtime_error);
  CHECK_THROWS_AS(Tensor::vector({std::numeric_limits<double>::infinity()}), std::runtime_error);
  Tensor ok = Tensor::vector({1.0, -2.0});
  CHECK(ok.all_finite());
}

TEST_CASE("softmax values") {
  Graph g;
  Value two = g.softmax(g.constant(Tensor::vector({0.0, 0.0})));
  CHECK(g.value(two)[0] == 0.5);
  CHECK(g.value(two)[1] == 0.5);

  Value equal = g.softmax(g.constant(Tensor::vector({7.3, 7.3, 7.3})));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.value(equal)[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  Value pair = g.softmax(g.constant(Tensor::vector({1.0, 2.0})));
  CHECK(g.value(pair)[0] == doctest::Approx(0.26894142136992605).epsilon(1e-9));
  CHECK(g.value(pair)[1] == doctest::Approx(0.7310585786300049).epsilon(1e-9));
}

TEST_CASE("softmax normalizes and is shift invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng.index(6);
    Tensor scores({n});
    for (std::size_t i = 0; i < n; ++i) scores[i] = rng.uniform(-30.0, 30.0);
    double shift = rng.uniform(-50.0, 50.0);
    Tensor shifted = scores;
    for (std::size_t i = 0; i < n; ++i) shifted[i] += shift;

    // Copies: growing the graph below would invalidate references.
    Graph g;
    Tensor p = g.value(g.softmax(g.constant(scores)));
    Tensor q = g.value(g.softmax(g.constant(shifted)));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += p[i];
      CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-12));
      CHECK(p[i] >= 0.0);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("softmax rejects empty input") {
  Graph g;
  CHECK_THROWS_AS(g.softmax(g.constant(Tensor({0}))), std::invalid_argument);
}

TEST_CASE("cosine similarity values") {
  Graph g;
  Value parallel = g.cosine(g.constant(Tensor::vector({1.0, 2.0, 3.0})),
                            g.constant(Tensor::vector({2.0, 4.0, 6.0})));
  CHECK(g.scalar(parallel) == doctest::Approx(1.0).epsilon(1e-12));

  Value orthogonal =
      g.cosine(g.constant(Tensor::vector({1.0, 0.0})), g.constant(Tensor::vector({0.0, 5.0})));
  CHECK(g.scalar(orthogonal) == 0.0);

  Value zero =
      g.cosine(g.constant(Tensor::vector({0.0, 0.0})), g.constant(Tensor::vector({1.0, 1.0})));
  CHECK(g.scalar(zero) == 0.0);
}

TEST_CASE("cosine stays in range and ignores scale") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.index(5);
    Tensor a({n}), b({n});
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform(-2.0, 2.0);
      b[i] = rng.uniform(-2.0, 2.0);
    }
    Graph g;
    double c = g.scalar(g.cosine(g.constant(a), g.constant(b)));
    CHECK(std::fabs(c) <= 1.0 + 1e-12);

    Tensor a2 = a, b2 = b;
    for (std::size_t i = 0; i < n; ++i) {
      a2[i] *= 7.25;
      b2[i] *= 0.125;
    }
    double scaled = g.scalar(g.cosine(g.constant(a2), g.constant(b2)));
    CHECK(scaled == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("sigmoid gradient at zero weight") {
  ParamSet set;
  Parameter& w = set.add("w", Tensor::vector({0.0}));
  Graph g;
  Value p = g.sigmoid(g.dot(g.param(w), g.constant(Tensor::vector({1.0}))));
  g.backward(p);
  CHECK(w.grad[0] == 0.25);
}

TEST_CASE("self-cosine has zero gradient") {
  ParamSet set;
  Parameter& a = set.add("a", Tensor::vector({0.7, -1.3, 2.2}));
  Graph g;
  Value c = g.cosine(g.param(a), g.param(a));
  CHECK(g.scalar(c) == doctest::Approx(1.0).epsilon(1e-12));
  g.backward(c);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(a.grad[i]) <= 1e-12);
}

TEST_CASE("parameters off the loss path get zero gradient") {
  ParamSet set;
  Parameter& used = set.add("used", Tensor::vector({1.0, 2.0}));
  Parameter& unused = set.add("unused", Tensor::vector({3.0, 4.0}));
  Graph g;
  Value loss = g.dot(g.param(used), g.constant(Tensor::vector({1.0, 1.0})));
  g.param(unused);
  g.backward(loss);
  CHECK(unused.grad[0] == 0.0);
  CHECK(unused.grad[1] == 0.0);
  CHECK(used.grad[0] == 1.0);
}

TEST_CASE("backward demands a scalar loss") {
  Graph g;
  ParamSet set;
  Parameter& w = set.add("w", Tensor::vector({1.0, 2.0}));
  Value v = g.scale(g.param(w), 2.0);
  CHECK_THROWS_AS(g.backward(v), std::invalid_argument);
}

TEST_CASE("shape mismatches are rejected") {
  Graph g;
  Value a = g.constant(Tensor::vector({1.0, 2.0}));
  Value b = g.constant(Tensor::vector({1.0, 2.0, 3.0}));
  CHECK_THROWS_AS(g.add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(g.mul(a, b), std::invalid_argument);
  CHECK_THROWS_AS(g.dot(a, b), std::invalid_argument);
  Value m = g.constant(Tensor::matrix(2, 2, {1.0, 0.0, 0.0, 1.0}));
  CHECK_THROWS_AS(g.matvec(m, b), std::invalid_argument);
  CHECK_THROWS_AS(g.pick(a, 2), std::out_of_range);
  CHECK_THROWS_AS(g.row(m, 2), std::out_of_range);
}

TEST_CASE("gradients agree with finite differences across all ops") {
  ParamSet set;
  Rng rng(17);
  Parameter& w = set.add("w", glorot_matrix(3, 4, rng));
  Parameter& u = set.add("u", glorot_matrix(3, 3, rng));
  Parameter& x = set.add("x", Tensor::vector({0.4, -0.3, 0.9, 0.2}));
  Parameter& y = set.add("y", Tensor::vector({-0.8, 0.5, 0.1}));
  Parameter& s = set.add("s", Tensor::scalar(0.7));
  Parameter& table = set.add("table", glorot_matrix(4, 3, rng));

  auto loss = [&](bool with_grad) {
    Graph g;
    Value xv = g.param(x);
    Value yv = g.param(y);
    Value wx = g.matvec(g.param(w), xv);                        // matvec
    Value uy = g.matvec(g.param(u), yv);
    Value mixed = g.add(g.tanh(wx), g.sigmoid(uy));             // add, tanh, sigmoid
    Value scaled = g.scale(mixed, g.param(s));                  // scale by node
    Value halved = g.scale(scaled, 0.5);                        // scale by constant
    Value picked_row = g.row(g.param(table), 2);                // row
    Value diff = g.sub(halved, picked_row);                     // sub
    Value prod = g.mul(diff, g.one_minus(g.sigmoid(uy)));       // mul, one_minus
    std::vector<Value> pooled = {prod, picked_row, g.neg(uy)};  // neg
    Value avg = g.mean(pooled);                                 // mean
    Value joined = g.concat(avg, g.softmax(prod));              // concat, softmax
    Value cos = g.cosine(avg, yv);                              // cosine
    Value safe = g.clamp(g.sigmoid(cos), 1e-6, 1.0 - 1e-6);     // clamp
    Value logp = g.log(safe);                                   // log
    std::vector<Value> scalars = {logp, g.pick(joined, 1), g.dot(avg, yv)};  // pick, dot
    Value stacked = g.stack(scalars);                           // stack
    std::vector<Value> total = {g.dot(stacked, stacked), g.pick(joined, 4)};
    Value out = g.sum(total);                                   // sum
    double value = g.scalar(out);
    if (with_grad) g.backward(out);
    return value;
  };

  GradCheckReport report = finite_difference_check(set, loss);
  INFO("max rel error: ", report.max_rel_error);
  CHECK(report.pass);
  CHECK(report.max_rel_error < 1e-4);
}

TEST_CASE("finite difference check passes on an empty set") {
  ParamSet set;
  auto loss = [](bool) { return 3.5; };
  GradCheckReport report = finite_difference_check(set, loss);
  CHECK(report.pass);
  CHECK(report.entries.empty());
  CHECK(report.max_rel_error == 0.0);
}

TEST_CASE("seeded rng reproduces draws") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(42), d(43);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs = differs || (c.next() != d.next());
  CHECK(differs);

  Rng e(3), f(3);
  Tensor m1 = glorot_matrix(4, 5, e);
  Tensor m2 = glorot_matrix(4, 5, f);
  double bound = std::sqrt(6.0 / 9.0);
  for (std::size_t i = 0; i < m1.size(); ++i) {
    CHECK(m1[i] == m2[i]);
    CHECK(std::fabs(m1[i]) <= bound);
  }
}

TEST_CASE("repeated param leaf accumulates once per use") {
  ParamSet set;
  Parameter& w = set.add("w", Tensor::vector({2.0, 3.0}));
  Graph g;
  Value a = g.param(w);
  Value b = g.param(w);  // same node
  CHECK(a.id == b.id);
  Value loss = g.dot(a, b);  // d/dw (w.w) = 2w
  g.backward(loss);
  CHECK(w.grad[0] == 4.0);
  CHECK(w.grad[1] == 6.0);
}

}  // TEST_SUITE
