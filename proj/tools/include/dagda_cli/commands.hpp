#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dagda/align.hpp"
#include "dagda/dataset.hpp"
#include "dagda/eval.hpp"
#include "dagda/model_io.hpp"
#include "dagda/rng.hpp"
#include "dagda_cli/run_config.hpp"

namespace dagda::cli {

namespace fs = std::filesystem;

enum class Stage { kAnchors = 0, kAlign = 1 };

/// Independent stream per pipeline stage, derived only from the seed, so a
/// stage re-run in isolation sees the same numbers as inside the pipeline.
Rng stage_rng(std::uint64_t seed, Stage stage);

// Pipeline pieces shared by the subcommands, the sweep and the tests.
LoadResult load_for(const RunConfig& cfg, const fs::path& data);
struct AnchorRun {
  AnchorArtifact artifact;
  std::vector<double> trace;  // empty for PCA anchors
};
AnchorRun compute_anchors(const RunConfig& cfg, const Dataset& ds);
AlignTraining compute_alignment(const RunConfig& cfg, const Dataset& ds, const AnchorSet& anchors);
EvalReport compute_report(const RunConfig& cfg, const Dataset& ds, const AnchorSet& anchors,
                          const AlignModel& model, EvalMode mode);
/// Anchors, alignment and evaluation in one go.
EvalReport run_pipeline(const RunConfig& cfg, const Dataset& ds, EvalMode mode);

// Subcommands. Each writes config.txt plus its artifacts into `out`.
void cmd_synth(const RunConfig& cfg, const fs::path& out);
void cmd_anchors(const RunConfig& cfg, const fs::path& data, const fs::path& out);
void cmd_align(const RunConfig& cfg, const fs::path& data, const fs::path& anchors, const fs::path& out);
EvalReport cmd_eval(const RunConfig& cfg, const fs::path& data, const fs::path& anchors,
                    const fs::path& model, EvalMode mode, const fs::path& out);

struct SweepRow {
  double alpha = 0.0;
  std::optional<double> mca;
  std::string error;
};
std::vector<double> parse_alpha_list(const std::string& text);
std::vector<SweepRow> sweep_alpha(const RunConfig& cfg, const Dataset& ds, std::vector<double> alphas);
std::string sweep_table(const std::vector<SweepRow>& rows);
std::vector<SweepRow> cmd_sweep_alpha(const RunConfig& cfg, const fs::path& data,
                                      const std::vector<double>& alphas, const fs::path& out);

void cmd_export_anchors(const RunConfig& cfg, const fs::path& anchors, const fs::path& out);

}  // namespace dagda::cli
