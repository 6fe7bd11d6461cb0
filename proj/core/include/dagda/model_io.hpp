#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dagda/align.hpp"
#include "dagda/anchor.hpp"
#include "dagda/checkpoint.hpp"

namespace dagda {

/// Anchors plus the auto-encoder that produced them (absent for PCA anchors).
struct AnchorArtifact {
  AnchorSet anchors;
  std::optional<AnchorModel> model;
  std::string source = "gae";  // "gae" or "pca"
  bool normalized = false;
};

Checkpoint to_checkpoint(const AnchorArtifact& artifact);
AnchorArtifact anchor_artifact_from(const Checkpoint& ckpt);

Checkpoint to_checkpoint(const AlignModel& model);
AlignModel align_model_from(const Checkpoint& ckpt);

void save_anchor_artifact(const std::filesystem::path& path, const AnchorArtifact& artifact);
AnchorArtifact load_anchor_artifact(const std::filesystem::path& path);

void save_align_model(const std::filesystem::path& path, const AlignModel& model);
AlignModel load_align_model(const std::filesystem::path& path);

}  // namespace dagda
