#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dagda/adam.hpp"
#include "dagda/graph.hpp"
#include "dagda/mat.hpp"
#include "dagda/rng.hpp"

namespace dagda {

enum class Activation { kLinear, kTanh, kRelu };

std::string_view activation_name(Activation a) noexcept;
// Accepts "linear", "tanh", "relu"; throws ConfigError otherwise.
Activation parse_activation(std::string_view name);

Mat activate(Activation a, const Mat& z);
// Elementwise derivative σ'(z), evaluated at the pre-activation.
Mat activate_derivative(Activation a, const Mat& z);

/// Diffusion graph-convolutional auto-encoder.
///
/// Layer l computes U_{l+1} = σ_l(P · U_l · W_l), P = Σ_{k=0}^{p} (αS)^k.
/// With the default depth there are two layers: encoder (nodes → d) and
/// decoder (d → nodes). The encoder output at `anchor_layer()` is the anchor
/// embedding.
struct AnchorModel {
  double alpha = 0.8;
  std::size_t p = 2;
  std::vector<Mat> weights;
  std::vector<Activation> activations;

  std::size_t num_layers() const noexcept { return weights.size(); }
  // Index of the layer whose output holds the anchors.
  std::size_t anchor_layer() const noexcept { return weights.size() / 2 - 1; }
  std::size_t anchor_dim() const { return weights.at(anchor_layer()).cols(); }

  // Throws ConfigError/DimensionError when layer shapes do not chain or the
  // bottleneck does not compress.
  void validate(std::size_t num_nodes) const;
};

/// Anchor embedding U = [U_C; U_T], rows in graph node order.
struct AnchorSet {
  Mat u;
  std::size_t num_classes = 0;

  std::size_t num_attrs() const noexcept { return u.rows() - num_classes; }
  std::size_t dim() const noexcept { return u.cols(); }
  Mat class_rows() const { return row_block(u, 0, num_classes); }
  Mat attr_rows() const { return row_block(u, num_classes, num_attrs()); }
};

struct AnchorForward {
  std::vector<Mat> diffused;     // P·U_l, layer inputs after propagation
  std::vector<Mat> pre;          // Z_l = P·U_l·W_l
  std::vector<Mat> activations;  // U_{l+1} = σ_l(Z_l)

  const Mat& reconstruction() const { return activations.back(); }
};

AnchorForward forward(const AnchorModel& model, const BipartiteGraph& g, const Mat& features);

// Anchor-layer activations for input `features`.
Mat hidden(const AnchorModel& model, const BipartiteGraph& g, const Mat& features);

struct AnchorLoss {
  double loss = 0.0;
  std::vector<Mat> grads;  // one per weight matrix
};

/// ‖reconstruction − F‖²_F / (d_C + d_T) and its gradient with respect to
/// every weight matrix.
AnchorLoss anchor_loss(const AnchorModel& model, const BipartiteGraph& g, const Mat& features);

struct AnchorConfig {
  std::size_t anchor_dim = 32;
  // Widths of extra encoder layers before the anchor layer; mirrored in the
  // decoder. Empty gives the two-layer auto-encoder.
  std::vector<std::size_t> extra_hidden;
  double alpha = 0.8;
  std::size_t p = 2;
  std::size_t epochs = 1000;
  Activation hidden_activation = Activation::kTanh;
  Activation output_activation = Activation::kLinear;
  AdamConfig adam{};
};

struct AnchorTraining {
  AnchorModel model;
  // Full-batch loss before each step plus the final loss: epochs + 1 entries.
  std::vector<double> trace;
};

AnchorModel init_anchor_model(const BipartiteGraph& g, const AnchorConfig& cfg, Rng& rng);

// Full-batch Adam on anchor_loss for cfg.epochs steps, starting from `model`.
AnchorTraining fit_anchor_model(AnchorModel model, const BipartiteGraph& g, const AnchorConfig& cfg);

AnchorTraining train_anchor_model(const BipartiteGraph& g, const AnchorConfig& cfg, Rng& rng);

AnchorSet extract_anchors(const AnchorModel& model, const BipartiteGraph& g);

/// PCA baseline: rows of F = A projected on the top-d principal components
/// of the column-centered features. Each component is signed so that its
/// largest-magnitude entry is positive.
AnchorSet pca_anchors(const BipartiteGraph& g, std::size_t d);

struct PcaBasis {
  Mat mean;        // 1 × features
  Mat components;  // features × d
  std::vector<double> variances;
};
PcaBasis pca_basis(const Mat& samples, std::size_t d);

// Scales every anchor row to unit Euclidean norm; zero rows stay zero.
AnchorSet normalize_anchor_rows(AnchorSet anchors);

}  // namespace dagda
