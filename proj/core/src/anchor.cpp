#include "dagda/anchor.hpp"

#include <algorithm>
#include <cmath>

#include "dagda/errors.hpp"
#include "dagda/linalg.hpp"

namespace dagda {

std::string_view activation_name(Activation a) noexcept {
  switch (a) {
    case Activation::kLinear: return "linear";
    case Activation::kTanh: return "tanh";
    case Activation::kRelu: return "relu";
  }
  return "linear";
}

Activation parse_activation(std::string_view name) {
  if (name == "linear") return Activation::kLinear;
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw ConfigError("unknown activation '" + std::string(name) + "' (linear, tanh, relu)");
}

Mat activate(Activation a, const Mat& z) {
  Mat out = z;
  switch (a) {
    case Activation::kLinear: break;
    case Activation::kTanh:
      for (double& v : out.values()) v = std::tanh(v);
      break;
    case Activation::kRelu:
      for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
      break;
  }
  return out;
}

Mat activate_derivative(Activation a, const Mat& z) {
  Mat out(z.rows(), z.cols(), 1.0);
  auto zv = z.values();
  auto ov = out.values();
  switch (a) {
    case Activation::kLinear: break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < zv.size(); ++i) {
        const double t = std::tanh(zv[i]);
        ov[i] = 1.0 - t * t;
      }
      break;
    case Activation::kRelu:
      for (std::size_t i = 0; i < zv.size(); ++i) ov[i] = zv[i] > 0.0 ? 1.0 : 0.0;
      break;
  }
  return out;
}

void AnchorModel::validate(std::size_t num_nodes) const {
  if (weights.empty() || weights.size() % 2 != 0) {
    throw ConfigError("anchor model needs an even, nonzero number of layers, got " +
                      std::to_string(weights.size()));
  }
  if (activations.size() != weights.size()) {
    throw ConfigError("anchor model: one activation per layer required");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("anchor model: alpha must lie in [0,1), got " + std::to_string(alpha));
  }
  if (weights.front().rows() != num_nodes || weights.back().cols() != num_nodes) {
    throw DimensionError("anchor model: first/last layer must map " + std::to_string(num_nodes) +
                         " node features, got " + weights.front().shape_str() + " ... " +
                         weights.back().shape_str());
  }
  for (std::size_t l = 1; l < weights.size(); ++l) {
    if (weights[l - 1].cols() != weights[l].rows()) {
      throw DimensionError("anchor model: layer " + std::to_string(l - 1) + " (" +
                           weights[l - 1].shape_str() + ") does not feed layer " +
                           std::to_string(l) + " (" + weights[l].shape_str() + ")");
    }
  }
  const std::size_t d = anchor_dim();
  if (d < 1 || d >= num_nodes) {
    throw ConfigError("anchor dimension must satisfy 1 <= d < " + std::to_string(num_nodes) +
                      ", got " + std::to_string(d));
  }
}

AnchorForward forward(const AnchorModel& model, const BipartiteGraph& g, const Mat& features) {
  if (features.rows() != g.num_nodes()) {
    throw DimensionError("anchor forward: features have " + std::to_string(features.rows()) +
                         " rows, graph has " + std::to_string(g.num_nodes()) + " nodes");
  }
  if (model.weights.empty() || features.cols() != model.weights.front().rows()) {
    throw DimensionError("anchor forward: features " + features.shape_str() +
                         " do not match first layer");
  }
  AnchorForward out;
  const Mat* input = &features;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    out.diffused.push_back(truncated_diffusion(g, model.alpha, model.p, *input));
    out.pre.push_back(matmul(out.diffused.back(), model.weights[l]));
    out.activations.push_back(activate(model.activations.at(l), out.pre.back()));
    input = &out.activations.back();
  }
  return out;
}

Mat hidden(const AnchorModel& model, const BipartiteGraph& g, const Mat& features) {
  AnchorForward fw = forward(model, g, features);
  return std::move(fw.activations.at(model.anchor_layer()));
}

AnchorLoss anchor_loss(const AnchorModel& model, const BipartiteGraph& g, const Mat& features) {
  const AnchorForward fw = forward(model, g, features);
  require_same_shape(fw.reconstruction(), features, "anchor_loss");
  const double scale = 1.0 / static_cast<double>(g.num_nodes());

  Mat residual = fw.reconstruction() - features;
  AnchorLoss out;
  out.loss = frob_norm_sq(residual) * scale;
  if (!std::isfinite(out.loss)) throw NumericalError("anchor_loss: reconstruction loss diverged");

  const std::size_t layers = model.weights.size();
  out.grads.resize(layers);
  Mat upstream = residual * (2.0 * scale);  // dL/dU_L
  for (std::size_t l = layers; l-- > 0;) {
    const Mat local = hadamard(upstream, activate_derivative(model.activations[l], fw.pre[l]));
    out.grads[l] = matmul_tn(fw.diffused[l], local);
    if (l > 0) {
      // P is symmetric, so Pᵀ·X is another truncated diffusion.
      upstream = truncated_diffusion(g, model.alpha, model.p, matmul_nt(local, model.weights[l]));
    }
  }
  return out;
}

AnchorModel init_anchor_model(const BipartiteGraph& g, const AnchorConfig& cfg, Rng& rng) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> widths{n};
  widths.insert(widths.end(), cfg.extra_hidden.begin(), cfg.extra_hidden.end());
  widths.push_back(cfg.anchor_dim);
  for (std::size_t i = cfg.extra_hidden.size(); i-- > 0;) widths.push_back(cfg.extra_hidden[i]);
  widths.push_back(n);

  AnchorModel model;
  model.alpha = cfg.alpha;
  model.p = cfg.p;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    if (widths[l] == 0 || widths[l + 1] == 0) throw ConfigError("anchor model: zero layer width");
    model.weights.push_back(glorot_init(rng, widths[l], widths[l + 1]));
    const bool last = l + 2 == widths.size();
    model.activations.push_back(last ? cfg.output_activation : cfg.hidden_activation);
  }
  model.validate(n);
  return model;
}

AnchorTraining fit_anchor_model(AnchorModel model, const BipartiteGraph& g,
                                const AnchorConfig& cfg) {
  if (cfg.epochs < 1) throw ConfigError("anchor training needs epochs >= 1");
  model.validate(g.num_nodes());
  const Mat& features = g.node_features();

  AnchorTraining out;
  out.trace.reserve(cfg.epochs + 1);
  AdamState adam(cfg.adam);
  std::vector<Mat*> params;
  std::vector<std::string> names;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    params.push_back(&model.weights[l]);
    names.push_back("W" + std::to_string(l));
  }
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    AnchorLoss step = anchor_loss(model, g, features);
    out.trace.push_back(step.loss);
    adam.step(params, step.grads, names);
  }
  out.trace.push_back(anchor_loss(model, g, features).loss);
  out.model = std::move(model);
  return out;
}

AnchorTraining train_anchor_model(const BipartiteGraph& g, const AnchorConfig& cfg, Rng& rng) {
  return fit_anchor_model(init_anchor_model(g, cfg, rng), g, cfg);
}

AnchorSet extract_anchors(const AnchorModel& model, const BipartiteGraph& g) {
  AnchorSet out;
  out.u = hidden(model, g, g.node_features());
  out.u.ensure_finite("extract_anchors");
  out.num_classes = g.num_classes();
  return out;
}

PcaBasis pca_basis(const Mat& samples, std::size_t d) {
  const std::size_t n = samples.rows();
  const std::size_t m = samples.cols();
  if (d < 1 || d > std::min(n, m)) {
    throw ConfigError("pca: dimension " + std::to_string(d) + " must lie in [1, " +
                      std::to_string(std::min(n, m)) + "]");
  }
  PcaBasis basis;
  basis.mean = Mat(1, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) basis.mean(0, j) += samples(i, j);
  basis.mean *= 1.0 / static_cast<double>(n);

  Mat centered = samples;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) centered(i, j) -= basis.mean(0, j);
  Mat cov = matmul_tn(centered, centered);
  cov *= 1.0 / static_cast<double>(n > 1 ? n - 1 : 1);

  const SymmetricEigen eig = symmetric_eigen(cov);
  basis.components = Mat(m, d);
  basis.variances.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (std::abs(eig.vectors(i, k)) > std::abs(eig.vectors(arg, k))) arg = i;
    }
    const double sign = eig.vectors(arg, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) basis.components(i, k) = sign * eig.vectors(i, k);
  }
  return basis;
}

AnchorSet pca_anchors(const BipartiteGraph& g, std::size_t d) {
  const Mat& f = g.node_features();
  const PcaBasis basis = pca_basis(f, d);
  Mat centered = f;
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) centered(i, j) -= basis.mean(0, j);
  AnchorSet out;
  out.u = matmul(centered, basis.components);
  out.num_classes = g.num_classes();
  return out;
}

AnchorSet normalize_anchor_rows(AnchorSet anchors) {
  for (std::size_t i = 0; i < anchors.u.rows(); ++i) {
    auto r = anchors.u.row(i);
    double sq = 0.0;
    for (double v : r) sq += v * v;
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (double& v : r) v *= inv;
    }
  }
  return anchors;
}

}  // namespace dagda
