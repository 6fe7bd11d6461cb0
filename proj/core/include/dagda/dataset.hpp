#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dagda/align.hpp"
#include "dagda/eval.hpp"
#include "dagda/mat.hpp"

namespace dagda {

/// A zero-shot dataset directory:
///
///   features.dmat | features.txt     n × d_X visual features
///   labels.txt                       one 0-based class id per line
///   class_attr.dmat | class_attr.txt d_C × d_T class-attribute weights
///   split.txt                        "seen: ids..." and "unseen: ids..." lines
///   train.txt        (optional)      0-based sample indices used for training
///   classes.txt      (optional)      one class name per line
///   attributes.txt   (optional)      one attribute name per line
///
/// All ids are 0-based.
struct Dataset {
  Mat features;
  std::vector<std::size_t> labels;
  Mat class_attr;
  SplitSpec split;
  std::optional<std::vector<std::size_t>> train_indices;
  std::vector<std::string> class_names;
  std::vector<std::string> attr_names;

  std::size_t num_classes() const noexcept { return class_attr.rows(); }
  std::size_t num_attrs() const noexcept { return class_attr.cols(); }
  std::size_t num_samples() const noexcept { return labels.size(); }
  std::size_t feature_dim() const noexcept { return features.cols(); }

  /// Enforces every dataset invariant, including that the class-attribute
  /// matrix builds a valid graph. Throws the specific ValidationError.
  void validate() const;

  LabeledBatch batch(std::span<const std::size_t> rows) const;
};

struct LoadOptions {
  // Remove attribute columns without any positive weight instead of failing.
  bool drop_empty_attributes = false;
};

struct LoadResult {
  Dataset dataset;
  std::vector<std::string> warnings;
};

LoadResult load_dataset(const std::filesystem::path& dir, const LoadOptions& opts = {});

/// Writes the directory layout above; matrices in DMAT binary unless
/// `text_matrices` is set.
void save_dataset(const std::filesystem::path& dir, const Dataset& ds, bool text_matrices = false);

SplitSpec parse_split(const std::string& text, const std::string& context);
std::string format_split(const SplitSpec& split);
std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& context);

/// Sample partition used by training and evaluation.
struct SamplePartition {
  std::vector<std::size_t> train;        // seen classes
  std::vector<std::size_t> seen_test;    // seen classes, disjoint from train
  std::vector<std::size_t> unseen_test;  // every unseen-class sample
};

/// With explicit train indices, seen_test is every other seen-class sample.
/// Otherwise, within each seen class the samples whose per-class ordinal k
/// satisfies k % holdout_every == holdout_every - 1 are held out (none when
/// holdout_every is 0). Throws ProtocolError if a training index refers to an
/// unseen class.
SamplePartition partition_samples(const Dataset& ds, std::size_t holdout_every);

}  // namespace dagda
