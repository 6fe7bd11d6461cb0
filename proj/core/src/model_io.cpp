#include "dagda/model_io.hpp"

#include "dagda/errors.hpp"

namespace dagda {

namespace {

constexpr const char* kAnchorKind = "anchors";
constexpr const char* kAlignKind = "align";

std::string join_activations(const std::vector<Activation>& acts) {
  std::string out;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (i) out += ',';
    out += activation_name(acts[i]);
  }
  return out;
}

std::vector<Activation> split_activations(const std::string& s) {
  std::vector<Activation> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_activation(s.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Checkpoint to_checkpoint(const AnchorArtifact& artifact) {
  Checkpoint ckpt;
  ckpt.kind = kAnchorKind;
  ckpt.set("source", artifact.source);
  ckpt.set("num_classes", std::to_string(artifact.anchors.num_classes));
  ckpt.set("num_attrs", std::to_string(artifact.anchors.num_attrs()));
  ckpt.set("anchor_dim", std::to_string(artifact.anchors.dim()));
  ckpt.set("normalized", artifact.normalized ? "1" : "0");
  if (artifact.model) {
    const AnchorModel& m = *artifact.model;
    ckpt.set("alpha", m.alpha);
    ckpt.set("p", std::to_string(m.p));
    ckpt.set("layers", std::to_string(m.weights.size()));
    ckpt.set("activations", join_activations(m.activations));
    for (std::size_t l = 0; l < m.weights.size(); ++l) ckpt.add("W" + std::to_string(l), m.weights[l]);
  }
  ckpt.add("U", artifact.anchors.u);
  return ckpt;
}

AnchorArtifact anchor_artifact_from(const Checkpoint& ckpt) {
  if (ckpt.kind != kAnchorKind) throw FormatError("expected an anchors checkpoint, found " + ckpt.kind);
  AnchorArtifact a;
  a.source = ckpt.get("source");
  a.normalized = ckpt.get_bool("normalized");
  a.anchors.u = ckpt.matrix("U");
  a.anchors.num_classes = ckpt.get_size("num_classes");
  if (a.anchors.num_classes > a.anchors.u.rows() ||
      a.anchors.num_attrs() != ckpt.get_size("num_attrs") ||
      a.anchors.dim() != ckpt.get_size("anchor_dim")) {
    throw FormatError("anchors checkpoint: header dimensions disagree with U " + a.anchors.u.shape_str());
  }
  if (a.source == "gae") {
    AnchorModel m;
    m.alpha = ckpt.get_double("alpha");
    m.p = ckpt.get_size("p");
    const std::size_t layers = ckpt.get_size("layers");
    for (std::size_t l = 0; l < layers; ++l) m.weights.push_back(ckpt.matrix("W" + std::to_string(l)));
    m.activations = split_activations(ckpt.get("activations"));
    m.validate(a.anchors.u.rows());
    a.model = std::move(m);
  } else if (a.source != "pca") {
    throw FormatError("anchors checkpoint: unknown source '" + a.source + "'");
  }
  return a;
}

Checkpoint to_checkpoint(const AlignModel& model) {
  Checkpoint ckpt;
  ckpt.kind = kAlignKind;
  ckpt.set("feature_dim", std::to_string(model.feature_dim()));
  ckpt.set("anchor_dim", std::to_string(model.anchor_dim()));
  ckpt.set("lambda1", model.lambda1);
  ckpt.set("lambda2", model.lambda2);
  ckpt.set("reg_enabled", model.reg_enabled ? "1" : "0");
  ckpt.set("tied", model.tied ? "1" : "0");
  ckpt.set("per_sample", model.per_sample ? "1" : "0");
  ckpt.add("W_cons", model.w_cons);
  if (!model.tied) ckpt.add("W_recons", model.w_recons);
  ckpt.add("M", model.m);
  return ckpt;
}

AlignModel align_model_from(const Checkpoint& ckpt) {
  if (ckpt.kind != kAlignKind) throw FormatError("expected an align checkpoint, found " + ckpt.kind);
  AlignModel m;
  m.lambda1 = ckpt.get_double("lambda1");
  m.lambda2 = ckpt.get_double("lambda2");
  m.reg_enabled = ckpt.get_bool("reg_enabled");
  m.tied = ckpt.get_bool("tied");
  m.per_sample = ckpt.get_bool("per_sample");
  m.w_cons = ckpt.matrix("W_cons");
  if (!m.tied) m.w_recons = ckpt.matrix("W_recons");
  m.m = ckpt.matrix("M");
  if (m.feature_dim() != ckpt.get_size("feature_dim") || m.anchor_dim() != ckpt.get_size("anchor_dim")) {
    throw FormatError("align checkpoint: header dimensions disagree with W_cons " + m.w_cons.shape_str());
  }
  m.validate();
  return m;
}

void save_anchor_artifact(const std::filesystem::path& path, const AnchorArtifact& artifact) {
  save_checkpoint(path, to_checkpoint(artifact));
}

AnchorArtifact load_anchor_artifact(const std::filesystem::path& path) {
  return anchor_artifact_from(load_checkpoint(path, kAnchorKind));
}

void save_align_model(const std::filesystem::path& path, const AlignModel& model) {
  save_checkpoint(path, to_checkpoint(model));
}

AlignModel load_align_model(const std::filesystem::path& path) {
  return align_model_from(load_checkpoint(path, kAlignKind));
}

}  // namespace dagda
