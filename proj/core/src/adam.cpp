#include "dagda/adam.hpp"

#include <cmath>

#include "dagda/errors.hpp"

namespace dagda {

namespace {

std::string param_label(std::span<const std::string> names, std::size_t i) {
  return i < names.size() ? names[i] : "param[" + std::to_string(i) + "]";
}

}  // namespace

void AdamState::step(std::span<Mat* const> params, std::span<const Mat> grads,
                     std::span<const std::string> names) {
  if (params.size() != grads.size()) {
    throw DimensionError("adam: " + std::to_string(params.size()) + " parameters but " +
                         std::to_string(grads.size()) + " gradients");
  }
  if (!m_.empty() && m_.size() != params.size()) {
    throw DimensionError("adam: parameter count changed between steps");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(grads[i])) {
      throw DimensionError("adam: gradient for " + param_label(names, i) + " has shape " +
                           grads[i].shape_str() + ", parameter is " + params[i]->shape_str());
    }
    if (!m_.empty() && !m_[i].same_shape(grads[i])) {
      throw DimensionError("adam: " + param_label(names, i) + " changed shape between steps");
    }
    if (!grads[i].all_finite()) {
      throw NumericalError("adam: non-finite gradient for " + param_label(names, i));
    }
  }
  if (m_.empty()) {
    for (const Mat& g : grads) {
      m_.emplace_back(g.rows(), g.cols());
      v_.emplace_back(g.rows(), g.cols());
    }
  }

  ++step_;
  const auto& c = config_;
  const double t = static_cast<double>(step_);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);

  for (std::size_t i = 0; i < params.size(); ++i) {
    auto p = params[i]->values();
    auto g = grads[i].values();
    auto m = m_[i].values();
    auto v = v_[i].values();
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = c.beta1 * m[j] + (1.0 - c.beta1) * g[j];
      v[j] = c.beta2 * v[j] + (1.0 - c.beta2) * g[j] * g[j];
      const double m_hat = m[j] / bias1;
      const double v_hat = v[j] / bias2;
      p[j] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
    params[i]->ensure_finite("adam update");
  }
}

}  // namespace dagda
