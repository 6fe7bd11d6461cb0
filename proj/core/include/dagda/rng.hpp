#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "dagda/mat.hpp"

namespace dagda {

/// SplitMix64 generator (Steele, Lea & Flood 2014).
///
/// The standard library engines are portable but its distributions are not,
/// so every derived quantity (uniform doubles, Gaussians, bounded integers,
/// shuffles) is computed here with fixed arithmetic. The same seed yields the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller (no cached second variate).
  double normal() noexcept;
  // Uniform integer in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  // Fisher-Yates.
  void shuffle(std::span<std::size_t> items) noexcept;

  // Independent child stream; advances this generator by one step.
  Rng split() noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Glorot/Xavier uniform: entries in ±sqrt(6 / (rows + cols)).
Mat glorot_init(Rng& rng, std::size_t rows, std::size_t cols);

Mat gaussian_mat(Rng& rng, std::size_t rows, std::size_t cols, double stddev = 1.0);

}  // namespace dagda
