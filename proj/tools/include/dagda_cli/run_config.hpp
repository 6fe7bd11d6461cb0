#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dagda/align.hpp"
#include "dagda/anchor.hpp"
#include "dagda/eval.hpp"
#include "dagda/synth.hpp"

namespace dagda::cli {

/// Every tunable of the command-line pipeline. Values come from defaults,
/// then an optional key=value file, then per-key overrides, in that order.
struct RunConfig {
  // anchor stage
  double alpha = 0.8;
  std::size_t p = 2;
  // 0 means: preset for `dataset` if it names a known benchmark, else 32.
  std::size_t anchor_dim = 0;
  std::string dataset;
  std::size_t anchor_epochs = 1000;
  double anchor_lr = 1e-3;
  std::string hidden_activation = "tanh";
  std::string output_activation = "linear";
  bool pca_anchors = false;
  bool normalize_anchors = false;

  // alignment stage
  std::size_t align_epochs = 3;
  double lambda1 = 1.0;
  double lambda2 = 5e-6;
  std::size_t batch_size = 64;
  double align_lr = 1e-3;
  bool tied_weights = false;
  bool no_reg = false;
  bool raw_loss = false;

  // evaluation and data handling
  bool cosine_scores = false;
  std::size_t holdout_every = 5;
  bool drop_empty_classes = false;
  bool drop_empty_attributes = false;

  std::uint64_t seed = 0;
  // Sweep points average this many runs with seeds seed, seed+1, ...
  std::size_t repeats = 1;
  std::size_t jobs = 1;

  // synthetic data
  std::size_t classes = 20;
  std::size_t attributes = 30;
  std::size_t samples_per_class = 50;
  std::size_t feature_dim = 64;
  double noise = 0.05;
  double density = 0.3;

  /// Sets `key` from its textual value; throws ConfigError for unknown keys
  /// or unparsable values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  static const std::vector<std::string>& keys();
  static bool is_flag(const std::string& key);

  /// Resolved configuration as key=value lines in fixed key order. Loading
  /// this text back yields an identical RunConfig.
  std::string echo() const;

  /// Replaces automatic values (anchor_dim=0) by concrete ones.
  void finalize();
  /// Range and consistency checks; throws ConfigError.
  void validate() const;

  AnchorConfig anchor_config() const;
  AlignConfig align_config() const;
  MetricOptions metric_options() const;
  SynthConfig synth_config() const;
};

/// Anchor width used for a named benchmark (awa2, cub, sun, apy); 0 if unknown.
std::size_t preset_anchor_dim(const std::string& dataset);

/// Shortest decimal text that parses back to exactly `v`.
std::string shortest_repr(double v);

/// Applies key=value lines ('#' starts a comment) onto `cfg`.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& context);

/// Defaults, then the file at `path` (if non-empty), then `overrides`;
/// finalized and validated.
RunConfig resolve_config(const std::filesystem::path& path,
                         const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace dagda::cli
