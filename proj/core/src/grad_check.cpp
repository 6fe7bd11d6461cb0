#include "dagda/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "dagda/errors.hpp"

namespace dagda {

Mat numeric_gradient(const LossFn& loss, std::span<const Mat> params, std::size_t index,
                     double h) {
  std::vector<Mat> work(params.begin(), params.end());
  Mat grad(work[index].rows(), work[index].cols());
  auto p = work[index].values();
  auto g = grad.values();
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double saved = p[j];
    p[j] = saved + h;
    const double up = loss(work);
    p[j] = saved - h;
    const double down = loss(work);
    p[j] = saved;
    g[j] = (up - down) / (2.0 * h);
  }
  return grad;
}

double grad_check(const LossFn& loss, std::span<const Mat> params,
                  std::span<const Mat> analytic_grads, double h) {
  if (params.size() != analytic_grads.size()) {
    throw DimensionError("grad_check: parameter and gradient counts differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_same_shape(params[i], analytic_grads[i], "grad_check");
    const Mat numeric = numeric_gradient(loss, params, i, h);
    auto a = analytic_grads[i].values();
    auto n = numeric.values();
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double scale = std::max({1.0, std::abs(a[j]), std::abs(n[j])});
      worst = std::max(worst, std::abs(a[j] - n[j]) / scale);
    }
  }
  return worst;
}

}  // namespace dagda
