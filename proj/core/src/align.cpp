#include "dagda/align.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dagda/errors.hpp"

namespace dagda {

Mat LabeledBatch::onehot() const {
  Mat y(labels.size(), num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) y(i, labels[i]) = 1.0;
  return y;
}

void LabeledBatch::validate() const {
  if (x.rows() != labels.size()) {
    throw DimensionError("labeled batch: " + std::to_string(x.rows()) + " feature rows but " +
                         std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) {
      throw LabelRangeError("labeled batch: sample " + std::to_string(i) + " has label " +
                            std::to_string(labels[i]) + " but only " +
                            std::to_string(num_classes) + " classes exist");
    }
  }
}

LabeledBatch LabeledBatch::subset(std::span<const std::size_t> rows) const {
  LabeledBatch out;
  out.x = gather_rows(x, rows);
  out.num_classes = num_classes;
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) out.labels.push_back(labels.at(r));
  return out;
}

void AlignModel::validate() const {
  const std::size_t d = anchor_dim();
  if (!tied && (w_recons.rows() != d || w_recons.cols() != feature_dim())) {
    throw DimensionError("align model: W_recons is " + w_recons.shape_str() + ", expected " +
                         std::to_string(d) + "x" + std::to_string(feature_dim()));
  }
  if (m.rows() != d || m.cols() != d) {
    throw DimensionError("align model: M is " + m.shape_str() + ", expected " +
                         std::to_string(d) + "x" + std::to_string(d));
  }
  if (lambda1 < 0.0 || lambda2 < 0.0) throw DomainError("align model: negative lambda");
  if (reg_enabled != (lambda2 != 0.0)) {
    throw ConfigError("align model: lambda2 must be zero exactly when regularization is off");
  }
}

AlignLoss align_loss(const AlignModel& model, const LabeledBatch& batch, const AnchorSet& anchors,
                     const Mat& class_attr) {
  model.validate();
  batch.validate();
  if (batch.x.cols() != model.feature_dim()) {
    throw DimensionError("align_loss: features " + batch.x.shape_str() + " vs W_cons " +
                         model.w_cons.shape_str());
  }
  if (anchors.dim() != model.anchor_dim()) {
    throw DimensionError("align_loss: anchors have dimension " + std::to_string(anchors.dim()) +
                         ", model expects " + std::to_string(model.anchor_dim()));
  }
  if (class_attr.rows() != anchors.num_classes || class_attr.cols() != anchors.num_attrs() ||
      batch.num_classes != anchors.num_classes) {
    throw DimensionError("align_loss: class-attribute matrix " + class_attr.shape_str() +
                         " does not match anchors (" + std::to_string(anchors.num_classes) +
                         " classes, " + std::to_string(anchors.num_attrs()) + " attributes)");
  }

  const double n = static_cast<double>(batch.size());
  const double scale = model.per_sample && n > 0 ? 1.0 / n : 1.0;
  const Mat& x = batch.x;
  const Mat u_c = anchors.class_rows();
  const Mat u_t = anchors.attr_rows();
  const Mat w_recons = model.reconstruction_weights();

  const Mat proj = matmul(x, model.w_cons);  // Ũ
  const Mat r_cons = proj - gather_rows(u_c, batch.labels);
  const Mat r_recons = matmul(proj, w_recons) - x;
  const Mat mu_t = matmul_nt(model.m, u_t);  // M·U_Tᵀ, d × d_T
  const Mat r_reg = matmul(proj, mu_t) - gather_rows(class_attr, batch.labels);

  AlignLoss out;
  out.cons = frob_norm_sq(r_cons) * scale;
  out.recons = frob_norm_sq(r_recons) * scale;
  out.reg = frob_norm_sq(r_reg) * scale;
  if (!std::isfinite(out.cons)) throw NumericalError("align_loss: L_cons diverged");
  if (!std::isfinite(out.recons)) throw NumericalError("align_loss: L_recons diverged");
  if (!std::isfinite(out.reg)) throw NumericalError("align_loss: L_reg diverged");
  out.total = out.cons + model.lambda1 * out.recons + model.lambda2 * out.reg;

  // dL/dŨ collects all three terms.
  Mat d_proj = r_cons * (2.0 * scale);
  d_proj += matmul_nt(r_recons, w_recons) * (2.0 * scale * model.lambda1);
  d_proj += matmul_nt(r_reg, mu_t) * (2.0 * scale * model.lambda2);

  out.d_cons = matmul_tn(x, d_proj);
  const Mat d_recons = matmul_tn(proj, r_recons) * (2.0 * scale * model.lambda1);
  if (model.tied) {
    out.d_cons += transpose(d_recons);
  } else {
    out.d_recons = d_recons;
  }
  // ∂/∂M ‖Ũ M U_Tᵀ − Y C‖² = 2 Ũᵀ R U_T
  out.d_m = matmul(matmul_tn(proj, r_reg), u_t) * (2.0 * scale * model.lambda2);
  return out;
}

AlignModel init_align_model(std::size_t feature_dim, std::size_t anchor_dim,
                            const AlignConfig& cfg, Rng& rng) {
  AlignModel model;
  model.w_cons = glorot_init(rng, feature_dim, anchor_dim);
  model.tied = cfg.tied_weights;
  if (!model.tied) model.w_recons = glorot_init(rng, anchor_dim, feature_dim);
  model.m = Mat::identity(anchor_dim);
  model.lambda1 = cfg.lambda1;
  model.lambda2 = cfg.no_reg ? 0.0 : cfg.lambda2;
  model.reg_enabled = model.lambda2 != 0.0;
  model.per_sample = cfg.per_sample;
  model.validate();
  return model;
}

AlignTraining fit_align(AlignModel model, const LabeledBatch& batch, const AnchorSet& anchors,
                        const Mat& class_attr, const AlignConfig& cfg, Rng& rng) {
  if (cfg.epochs < 1) throw ConfigError("alignment training needs epochs >= 1");
  if (cfg.batch_size < 1) throw ConfigError("alignment batch size must be >= 1");
  if (batch.size() == 0) throw ValidationError("alignment training set is empty");

  AlignTraining out;
  out.trace.push_back(align_loss(model, batch, anchors, class_attr).total);

  AdamState adam(cfg.adam);
  std::vector<std::size_t> order(batch.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      const LabeledBatch mini =
          batch.subset(std::span<const std::size_t>(order).subspan(begin, end - begin));
      AlignLoss step = align_loss(model, mini, anchors, class_attr);
      if (model.tied) {
        Mat* params[] = {&model.w_cons, &model.m};
        const Mat grads[] = {std::move(step.d_cons), std::move(step.d_m)};
        const std::string names[] = {"W_cons", "M"};
        adam.step(params, grads, names);
      } else {
        Mat* params[] = {&model.w_cons, &model.w_recons, &model.m};
        const Mat grads[] = {std::move(step.d_cons), std::move(step.d_recons),
                             std::move(step.d_m)};
        const std::string names[] = {"W_cons", "W_recons", "M"};
        adam.step(params, grads, names);
      }
      ++out.steps;
    }
    out.trace.push_back(align_loss(model, batch, anchors, class_attr).total);
  }
  out.model = std::move(model);
  return out;
}

AlignTraining train_align(const LabeledBatch& batch, const AnchorSet& anchors,
                          const Mat& class_attr, const AlignConfig& cfg, Rng& rng) {
  AlignModel model = init_align_model(batch.x.cols(), anchors.dim(), cfg, rng);
  return fit_align(std::move(model), batch, anchors, class_attr, cfg, rng);
}

Mat embed(const AlignModel& model, const Mat& x) {
  if (x.cols() != model.feature_dim()) {
    throw DimensionError("embed: features " + x.shape_str() + " vs W_cons " +
                         model.w_cons.shape_str());
  }
  return matmul(x, model.w_cons);
}

Mat class_scores(const AlignModel& model, const Mat& x, const AnchorSet& anchors,
                 std::span<const std::size_t> label_set, ScoreKind kind) {
  if (label_set.empty()) throw ValidationError("classify: empty label set");
  for (std::size_t c : label_set) {
    if (c >= anchors.num_classes) {
      throw LabelRangeError("classify: class " + std::to_string(c) + " out of range (" +
                            std::to_string(anchors.num_classes) + " classes)");
    }
  }
  if (anchors.dim() != model.anchor_dim()) {
    throw DimensionError("classify: anchor dimension " + std::to_string(anchors.dim()) +
                         " vs model " + std::to_string(model.anchor_dim()));
  }
  Mat e = embed(model, x);
  Mat targets = gather_rows(anchors.u, label_set);
  if (kind == ScoreKind::kCosine) {
    e = normalize_anchor_rows({std::move(e), 0}).u;
    targets = normalize_anchor_rows({std::move(targets), 0}).u;
  }
  return matmul_nt(e, targets);
}

std::vector<std::size_t> classify(const AlignModel& model, const Mat& x, const AnchorSet& anchors,
                                  std::span<const std::size_t> label_set, ScoreKind kind) {
  const Mat scores = class_scores(model, x, anchors, label_set, kind);
  std::vector<std::size_t> preds(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < label_set.size(); ++j) {
      const double s = scores(i, j), b = scores(i, best);
      if (s > b || (s == b && label_set[j] < label_set[best])) best = j;
    }
    preds[i] = label_set[best];
  }
  return preds;
}

}  // namespace dagda
