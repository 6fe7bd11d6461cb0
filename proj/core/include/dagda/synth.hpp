#pragma once

#include <cstddef>
#include <cstdint>

#include "dagda/dataset.hpp"

namespace dagda {

struct SynthConfig {
  std::size_t num_classes = 20;
  std::size_t num_attrs = 30;
  std::size_t samples_per_class = 50;
  std::size_t feature_dim = 64;
  double noise = 0.05;
  double density = 0.3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Self-contained zero-shot dataset.
///
/// C is a binary matrix with Bernoulli(density) entries; rows that come out
/// empty or duplicate an earlier row are redrawn, and empty columns are
/// redrawn until nonzero. Class centers are rows of C mapped to feature
/// space by a fixed Gaussian map with N(0, 1/num_attrs) entries; each sample
/// is its center plus N(0, noise²) per feature. The last ⌈num_classes/4⌉
/// classes are unseen. Samples are stored class by class.
Dataset synth_dataset(const SynthConfig& cfg);

/// Class centers (num_classes × feature_dim) the generator used for `cfg`.
Mat synth_centers(const SynthConfig& cfg);

}  // namespace dagda
