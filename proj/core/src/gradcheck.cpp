#include "extsum/gradcheck.hpp"

#include <cmath>
#include <stdexcept>

namespace extsum {

GradCheckReport finite_difference_check(ParamSet& params,
                                        const std::function<double(bool)>& loss, double epsilon,
                                        double tolerance, double floor) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("finite_difference_check: epsilon must be positive");
  }
  GradCheckReport report;
  report.tolerance = tolerance;

  params.zero_grad();
  double base = loss(true);
  if (!std::isfinite(base)) {
    throw std::runtime_error("finite_difference_check: non-finite loss");
  }

  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (auto& p : params) analytic.push_back(p->grad);

  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter& p = params[i];
    GradCheckEntry entry;
    entry.name = p.name;
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      double saved = p.value[k];
      p.value[k] = saved + epsilon;
      double up = loss(false);
      p.value[k] = saved - epsilon;
      double down = loss(false);
      p.value[k] = saved;
      double numeric = (up - down) / (2.0 * epsilon);
      double a = analytic[i][k];
      double rel = std::fabs(a - numeric) / std::max(floor, std::fabs(a) + std::fabs(numeric));
      entry.max_rel_error = std::max(entry.max_rel_error, rel);
      ++entry.checked;
    }
    report.max_rel_error = std::max(report.max_rel_error, entry.max_rel_error);
    report.entries.push_back(std::move(entry));
  }
  report.pass = report.max_rel_error < tolerance;
  return report;
}

}  // namespace extsum
