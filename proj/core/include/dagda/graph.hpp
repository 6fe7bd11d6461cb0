#pragma once

#include <cstddef>
#include <vector>

#include "dagda/mat.hpp"

namespace dagda {

/// Class-attribute bipartite graph.
///
/// Node ordering: classes 0..num_classes-1, then attributes
/// num_classes..num_classes+num_attrs-1. The adjacency is
///
///     A = [ 0   C ]
///         [ Cᵀ  0 ]
///
/// and S = D^(-1/2) A D^(-1/2) is the normalized adjacency. Instances are
/// immutable and only come out of build_graph().
class BipartiteGraph {
 public:
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t num_attrs() const noexcept { return num_attrs_; }
  std::size_t num_nodes() const noexcept { return num_classes_ + num_attrs_; }

  const Mat& class_attr() const noexcept { return class_attr_; }
  const Mat& adjacency() const noexcept { return adjacency_; }
  const std::vector<double>& degrees() const noexcept { return degrees_; }
  const Mat& normalized_adjacency() const noexcept { return normalized_; }

  // Node features used by the anchor auto-encoder: F = A.
  const Mat& node_features() const noexcept { return adjacency_; }

  friend BipartiteGraph build_graph(const Mat& class_attr);

 private:
  BipartiteGraph() = default;

  std::size_t num_classes_ = 0;
  std::size_t num_attrs_ = 0;
  Mat class_attr_;
  Mat adjacency_;
  std::vector<double> degrees_;
  Mat normalized_;
};

/// Throws NegativeEntryError (with coordinates) for negative or non-finite
/// entries and IsolatedNodeError (naming the class or attribute) when a row
/// or column of C has no positive entry.
BipartiteGraph build_graph(const Mat& class_attr);

/// Σ_{k=0}^{p} (αS)^k X by Horner's rule: R ← X, then p times R ← X + αS·R.
/// alpha must lie in [0, 1).
Mat truncated_diffusion(const BipartiteGraph& g, double alpha, std::size_t p, const Mat& x);

/// (1-α)(I - αS)^(-1) F via a linear solve, the minimizer of
/// diffusion_objective with μ = (1-α)/α. alpha must lie in (0, 1).
Mat closed_form_diffusion(const BipartiteGraph& g, double alpha, const Mat& f);

/// Σ_ij (A_ij/2)‖H_i/√d_i − H_j/√d_j‖² + μ Σ_i ‖H_i − F_i‖², summed pairwise.
double diffusion_objective(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f);

/// Same objective as tr(Hᵀ(I−S)H) + μ‖H−F‖²_F.
double diffusion_objective_trace(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f);

/// ∇_H of the objective: 2(I−S)H + 2μ(H−F).
Mat diffusion_objective_gradient(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f);

/// μ = (1-α)/α, the smoothing weight whose minimizer the closed form gives.
inline double mu_from_alpha(double alpha) { return (1.0 - alpha) / alpha; }

}  // namespace dagda
