#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dagda/adam.hpp"
#include "dagda/anchor.hpp"
#include "dagda/mat.hpp"
#include "dagda/rng.hpp"

namespace dagda {

/// Visual features with one class id per row. The one-hot label matrix Y is
/// implicit: Y·B is computed as a row gather of B.
struct LabeledBatch {
  Mat x;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;

  std::size_t size() const noexcept { return labels.size(); }
  Mat onehot() const;
  // Throws DimensionError / LabelRangeError.
  void validate() const;
  LabeledBatch subset(std::span<const std::size_t> rows) const;
};

/// Projection into anchor space with reconstruction and relation terms:
///
///   Ũ = X·W_cons
///   L_cons   = ‖Ũ − Y·U_C‖²
///   L_recons = ‖Ũ·W_recons − X‖²
///   L_reg    = ‖Y·C − Ũ·M·U_Tᵀ‖²
///   L = L_cons + λ₁ L_recons + λ₂ L_reg
///
/// Each term is divided by the batch size unless `per_sample` is false.
struct AlignModel {
  Mat w_cons;    // d_X × d
  Mat w_recons;  // d × d_X; unused (empty) when tied
  Mat m;         // d × d
  double lambda1 = 1.0;
  double lambda2 = 5e-6;
  bool reg_enabled = true;
  bool tied = false;
  bool per_sample = true;

  std::size_t feature_dim() const noexcept { return w_cons.rows(); }
  std::size_t anchor_dim() const noexcept { return w_cons.cols(); }
  Mat reconstruction_weights() const { return tied ? transpose(w_cons) : w_recons; }
  void validate() const;
};

struct AlignLoss {
  double total = 0.0;
  double cons = 0.0;
  double recons = 0.0;
  double reg = 0.0;
  Mat d_cons;
  Mat d_recons;  // empty when tied
  Mat d_m;
};

AlignLoss align_loss(const AlignModel& model, const LabeledBatch& batch, const AnchorSet& anchors,
                     const Mat& class_attr);

struct AlignConfig {
  double lambda1 = 1.0;
  double lambda2 = 5e-6;
  bool no_reg = false;
  bool tied_weights = false;
  bool per_sample = true;
  std::size_t epochs = 3;
  std::size_t batch_size = 64;
  AdamConfig adam{};
};

struct AlignTraining {
  AlignModel model;
  // Full-batch loss at initialization and after every epoch.
  std::vector<double> trace;
  std::size_t steps = 0;
};

AlignModel init_align_model(std::size_t feature_dim, std::size_t anchor_dim,
                            const AlignConfig& cfg, Rng& rng);

// Mini-batch Adam over cfg.epochs shuffled passes, starting from `model`.
AlignTraining fit_align(AlignModel model, const LabeledBatch& batch, const AnchorSet& anchors,
                        const Mat& class_attr, const AlignConfig& cfg, Rng& rng);

AlignTraining train_align(const LabeledBatch& batch, const AnchorSet& anchors,
                          const Mat& class_attr, const AlignConfig& cfg, Rng& rng);

Mat embed(const AlignModel& model, const Mat& x);

enum class ScoreKind { kInnerProduct, kCosine };

/// n × |label_set| compatibility scores ⟨X·W_cons row, U_C row c⟩.
Mat class_scores(const AlignModel& model, const Mat& x, const AnchorSet& anchors,
                 std::span<const std::size_t> label_set,
                 ScoreKind kind = ScoreKind::kInnerProduct);

/// Arg-max class per row over `label_set`; ties go to the smallest class id.
std::vector<std::size_t> classify(const AlignModel& model, const Mat& x, const AnchorSet& anchors,
                                  std::span<const std::size_t> label_set,
                                  ScoreKind kind = ScoreKind::kInnerProduct);

}  // namespace dagda
