#pragma once

#include <functional>
#include <string>
#include <vector>

#include "extsum/params.hpp"

namespace extsum {

struct GradCheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  std::size_t checked = 0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

// Central-difference gradient verification.
//
// `loss(with_grad)` must evaluate the loss at the current parameter values;
// when with_grad is true it must also accumulate gradients into the set
// (grads are zeroed here first). Relative error per element is
// |analytic - numeric| / max(floor, |analytic| + |numeric|).
GradCheckReport finite_difference_check(ParamSet& params,
                                        const std::function<double(bool with_grad)>& loss,
                                        double epsilon = 1e-5, double tolerance = 1e-4,
                                        double floor = 1e-8);

}  // namespace extsum
