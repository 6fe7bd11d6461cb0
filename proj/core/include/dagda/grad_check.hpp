#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dagda/mat.hpp"

namespace dagda {

using LossFn = std::function<double(std::span<const Mat>)>;

/// Central finite differences on every entry of every parameter.
///
/// Returns max over entries of |analytic - numeric| / max(1, |analytic|, |numeric|).
double grad_check(const LossFn& loss, std::span<const Mat> params,
                  std::span<const Mat> analytic_grads, double h = 1e-5);

/// Numeric gradient of `loss` with respect to params[index].
Mat numeric_gradient(const LossFn& loss, std::span<const Mat> params, std::size_t index,
                     double h = 1e-5);

}  // namespace dagda
