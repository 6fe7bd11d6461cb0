#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dagda/mat.hpp"

namespace dagda {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias correction (Kingma & Ba). Moments are created lazily on the
/// first step and keep the shapes of the parameters they track.
class AdamState {
 public:
  explicit AdamState(AdamConfig config = {}) : config_(config) {}

  /// Applies one update in place. `names` (optional) labels parameters in
  /// error messages.
  void step(std::span<Mat* const> params, std::span<const Mat> grads,
            std::span<const std::string> names = {});

  const AdamConfig& config() const noexcept { return config_; }
  std::uint64_t steps() const noexcept { return step_; }
  const std::vector<Mat>& first_moments() const noexcept { return m_; }
  const std::vector<Mat>& second_moments() const noexcept { return v_; }

 private:
  AdamConfig config_;
  std::uint64_t step_ = 0;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
};

}  // namespace dagda
