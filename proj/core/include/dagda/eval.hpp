#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dagda/align.hpp"
#include "dagda/anchor.hpp"

namespace dagda {

/// Disjoint seen/unseen class partition, each list sorted ascending.
struct SplitSpec {
  std::vector<std::size_t> seen;
  std::vector<std::size_t> unseen;

  // Sorts and deduplicates; throws SplitOverlapError if the sets intersect.
  void normalize();
  bool is_seen(std::size_t c) const;
  bool is_unseen(std::size_t c) const;
  std::vector<std::size_t> all_classes() const;
};

struct ClassAccuracy {
  std::size_t class_id = 0;
  std::size_t count = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct MetricOptions {
  // Skip classes without samples instead of raising MetricUndefinedError.
  bool drop_empty_classes = false;
  ScoreKind score = ScoreKind::kInnerProduct;
};

/// Per-class top-1 accuracies over `class_set`, in class_set order.
std::vector<ClassAccuracy> per_class_accuracy(std::span<const std::size_t> preds,
                                              std::span<const std::size_t> labels,
                                              std::span<const std::size_t> class_set,
                                              const MetricOptions& opts = {});

/// Mean class accuracy: per-class accuracies averaged with equal class weight.
double mca(std::span<const std::size_t> preds, std::span<const std::size_t> labels,
           std::span<const std::size_t> class_set, const MetricOptions& opts = {});

double harmonic_mean(double mca_seen, double mca_unseen);

enum class EvalMode { kConventional, kGeneralized };

struct EvalReport {
  EvalMode mode = EvalMode::kConventional;
  std::vector<ClassAccuracy> classes;  // seen entries first in generalized mode
  std::optional<double> mca_seen;
  double mca_unseen = 0.0;
  std::optional<double> h;

  // Headline number: MCA over unseen classes (conventional) or H.
  double mca() const noexcept { return mode == EvalMode::kConventional ? mca_unseen : *h; }

  // Flat key=value block, fractions printed with 17 significant digits.
  std::string to_key_value() const;
  // class_id,n,acc rows followed by summary rows.
  std::string to_table() const;
};

/// Search among unseen classes only; every test label must be unseen.
EvalReport evaluate_conventional(const AlignModel& model, const AnchorSet& anchors,
                                 const LabeledBatch& test, const SplitSpec& split,
                                 const MetricOptions& opts = {});

/// Search among all classes; reports MCA_s, MCA_u and their harmonic mean.
EvalReport evaluate_generalized(const AlignModel& model, const AnchorSet& anchors,
                                const LabeledBatch& seen_test, const LabeledBatch& unseen_test,
                                const SplitSpec& split, const MetricOptions& opts = {});

std::string_view eval_mode_name(EvalMode mode) noexcept;
EvalMode parse_eval_mode(std::string_view name);

}  // namespace dagda
