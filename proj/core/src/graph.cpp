#include "dagda/graph.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dagda/errors.hpp"
#include "dagda/linalg.hpp"

namespace dagda {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_node_rows(const BipartiteGraph& g, const Mat& x, const char* op) {
  if (x.rows() != g.num_nodes()) {
    throw DimensionError(std::string(op) + ": operand has " + std::to_string(x.rows()) +
                         " rows, graph has " + std::to_string(g.num_nodes()) + " nodes");
  }
}

// S·x where S is stored densely.
Mat propagate(const BipartiteGraph& g, const Mat& x) { return matmul(g.normalized_adjacency(), x); }

}  // namespace

BipartiteGraph build_graph(const Mat& class_attr) {
  const std::size_t dc = class_attr.rows();
  const std::size_t dt = class_attr.cols();
  if (dc == 0 || dt == 0) {
    throw ValidationError("build_graph: class-attribute matrix is empty (" +
                          class_attr.shape_str() + ")");
  }
  for (std::size_t i = 0; i < dc; ++i) {
    for (std::size_t j = 0; j < dt; ++j) {
      const double v = class_attr(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw NegativeEntryError("build_graph: class-attribute entry (" + std::to_string(i) +
                                 ", " + std::to_string(j) + ") = " + short_number(v) +
                                 " is not a finite nonnegative weight");
      }
    }
  }

  BipartiteGraph g;
  g.num_classes_ = dc;
  g.num_attrs_ = dt;
  g.class_attr_ = class_attr;
  const std::size_t n = dc + dt;
  g.adjacency_ = Mat(n, n);
  for (std::size_t i = 0; i < dc; ++i) {
    for (std::size_t j = 0; j < dt; ++j) {
      g.adjacency_(i, dc + j) = class_attr(i, j);
      g.adjacency_(dc + j, i) = class_attr(i, j);
    }
  }

  g.degrees_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (double v : g.adjacency_.row(i)) d += v;
    if (!(d > 0.0)) {
      if (i < dc) {
        throw IsolatedNodeError("build_graph: class " + std::to_string(i) +
                                " has no positive attribute weight");
      }
      throw IsolatedNodeError("build_graph: attribute " + std::to_string(i - dc) +
                              " is not attached to any class");
    }
    g.degrees_[i] = d;
  }

  g.normalized_ = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = g.adjacency_(i, j);
      if (a != 0.0) g.normalized_(i, j) = a / std::sqrt(g.degrees_[i] * g.degrees_[j]);
    }
  }
  g.normalized_.ensure_finite("build_graph");
  return g;
}

Mat truncated_diffusion(const BipartiteGraph& g, double alpha, std::size_t p, const Mat& x) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("truncated_diffusion: alpha must lie in [0,1), got " + std::to_string(alpha));
  }
  require_node_rows(g, x, "truncated_diffusion");
  Mat r = x;
  for (std::size_t k = 0; k < p; ++k) {
    Mat next = propagate(g, r);
    next *= alpha;
    next += x;
    r = std::move(next);
  }
  return r;
}

Mat closed_form_diffusion(const BipartiteGraph& g, double alpha, const Mat& f) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("closed_form_diffusion: alpha must lie in (0,1), got " +
                      std::to_string(alpha));
  }
  require_node_rows(g, f, "closed_form_diffusion");
  const std::size_t n = g.num_nodes();
  Mat system = Mat::identity(n);
  const Mat& s = g.normalized_adjacency();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) -= alpha * s(i, j);
  return solve(system, f * (1.0 - alpha));
}

double diffusion_objective(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f) {
  require_node_rows(g, h, "diffusion_objective");
  require_same_shape(h, f, "diffusion_objective");
  const std::size_t n = g.num_nodes();
  const Mat& a = g.adjacency();
  const auto& deg = g.degrees();
  double smooth = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double si = 1.0 / std::sqrt(deg[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      const double sj = 1.0 / std::sqrt(deg[j]);
      double dist = 0.0;
      for (std::size_t c = 0; c < h.cols(); ++c) {
        const double diff = h(i, c) * si - h(j, c) * sj;
        dist += diff * diff;
      }
      smooth += 0.5 * a(i, j) * dist;
    }
  }
  return smooth + mu * frob_norm_sq(h - f);
}

double diffusion_objective_trace(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f) {
  require_node_rows(g, h, "diffusion_objective_trace");
  require_same_shape(h, f, "diffusion_objective_trace");
  // tr(Hᵀ(I−S)H) = ‖H‖² − ⟨H, SH⟩
  const Mat sh = propagate(g, h);
  double inner = 0.0;
  auto hv = h.values();
  auto shv = sh.values();
  for (std::size_t i = 0; i < hv.size(); ++i) inner += hv[i] * shv[i];
  return frob_norm_sq(h) - inner + mu * frob_norm_sq(h - f);
}

Mat diffusion_objective_gradient(const BipartiteGraph& g, double mu, const Mat& h, const Mat& f) {
  require_node_rows(g, h, "diffusion_objective_gradient");
  require_same_shape(h, f, "diffusion_objective_gradient");
  Mat grad = (h - propagate(g, h)) * 2.0;
  grad += (h - f) * (2.0 * mu);
  return grad;
}

}  // namespace dagda
