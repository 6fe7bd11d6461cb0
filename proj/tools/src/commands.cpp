#include "dagda_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include "dagda/errors.hpp"
#include "dagda/graph.hpp"
#include "dagda/matrix_io.hpp"
#include "dagda/synth.hpp"

namespace dagda::cli {

namespace {

void write_config(const RunConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  write_file(out / "config.txt", cfg.echo());
}

std::string trace_text(const std::vector<double>& trace) {
  std::string s;
  for (double v : trace) s += format_double(v) + "\n";
  return s;
}

void check_anchor_fit(const AnchorSet& a, const Dataset& ds, const fs::path& where) {
  if (a.num_classes != ds.num_classes() || a.num_attrs() != ds.num_attrs()) {
    throw DimensionError(where.string() + ": anchors cover " + std::to_string(a.num_classes) +
                         " classes and " + std::to_string(a.num_attrs()) + " attributes, dataset has " +
                         std::to_string(ds.num_classes()) + " and " + std::to_string(ds.num_attrs()));
  }
}

// Protocol problems are reported against the dataset they came from.
template <class F>
auto with_context(const fs::path& data, F&& f) {
  try {
    return f();
  } catch (const ProtocolError& e) {
    throw ProtocolError(data.string() + ": " + e.what());
  } catch (const MetricUndefinedError& e) {
    throw MetricUndefinedError(data.string() + ": " + e.what());
  }
}

}  // namespace

Rng stage_rng(std::uint64_t seed, Stage stage) {
  Rng root(seed);
  Rng r = root.split();
  for (int i = 0; i < static_cast<int>(stage); ++i) r = root.split();
  return r;
}

LoadResult load_for(const RunConfig& cfg, const fs::path& data) {
  LoadOptions opts;
  opts.drop_empty_attributes = cfg.drop_empty_attributes;
  LoadResult r = load_dataset(data, opts);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return r;
}

AnchorRun compute_anchors(const RunConfig& cfg, const Dataset& ds) {
  const BipartiteGraph g = build_graph(ds.class_attr);
  AnchorRun run;
  if (cfg.pca_anchors) {
    run.artifact.anchors = pca_anchors(g, cfg.anchor_dim);
    run.artifact.source = "pca";
  } else {
    Rng rng = stage_rng(cfg.seed, Stage::kAnchors);
    AnchorTraining t = train_anchor_model(g, cfg.anchor_config(), rng);
    run.artifact.anchors = extract_anchors(t.model, g);
    run.artifact.model = std::move(t.model);
    run.artifact.source = "gae";
    run.trace = std::move(t.trace);
  }
  if (cfg.normalize_anchors) {
    run.artifact.anchors = normalize_anchor_rows(std::move(run.artifact.anchors));
    run.artifact.normalized = true;
  }
  return run;
}

AlignTraining compute_alignment(const RunConfig& cfg, const Dataset& ds, const AnchorSet& anchors) {
  if (anchors.dim() != cfg.anchor_dim) {
    throw ConfigError("anchors have dimension " + std::to_string(anchors.dim()) +
                      " but the config asks for anchor_dim=" + std::to_string(cfg.anchor_dim));
  }
  const SamplePartition part = partition_samples(ds, cfg.holdout_every);
  if (part.train.empty()) throw ValidationError("no training samples in the seen classes");
  Rng rng = stage_rng(cfg.seed, Stage::kAlign);
  return train_align(ds.batch(part.train), anchors, ds.class_attr, cfg.align_config(), rng);
}

EvalReport compute_report(const RunConfig& cfg, const Dataset& ds, const AnchorSet& anchors,
                          const AlignModel& model, EvalMode mode) {
  if (model.feature_dim() != ds.feature_dim() || model.anchor_dim() != anchors.dim()) {
    throw DimensionError("alignment model " + model.w_cons.shape_str() + " does not fit features with " +
                         std::to_string(ds.feature_dim()) + " columns and anchors of dimension " +
                         std::to_string(anchors.dim()));
  }
  const SamplePartition part = partition_samples(ds, cfg.holdout_every);
  const MetricOptions opts = cfg.metric_options();
  if (mode == EvalMode::kConventional) {
    return evaluate_conventional(model, anchors, ds.batch(part.unseen_test), ds.split, opts);
  }
  return evaluate_generalized(model, anchors, ds.batch(part.seen_test), ds.batch(part.unseen_test),
                              ds.split, opts);
}

EvalReport run_pipeline(const RunConfig& cfg, const Dataset& ds, EvalMode mode) {
  const AnchorRun anchors = compute_anchors(cfg, ds);
  const AlignTraining align = compute_alignment(cfg, ds, anchors.artifact.anchors);
  return compute_report(cfg, ds, anchors.artifact.anchors, align.model, mode);
}

void cmd_synth(const RunConfig& cfg, const fs::path& out) {
  const Dataset ds = synth_dataset(cfg.synth_config());
  save_dataset(out, ds);
  write_config(cfg, out);
}

void cmd_anchors(const RunConfig& cfg, const fs::path& data, const fs::path& out) {
  const Dataset ds = load_for(cfg, data).dataset;
  const AnchorRun run = compute_anchors(cfg, ds);
  write_config(cfg, out);
  save_anchor_artifact(out / "anchors.ckpt", run.artifact);
  save_matrix(out / "anchors.dmat", run.artifact.anchors.u);
  if (!run.trace.empty()) write_file(out / "anchor_trace.txt", trace_text(run.trace));
}

void cmd_align(const RunConfig& cfg, const fs::path& data, const fs::path& anchors, const fs::path& out) {
  const Dataset ds = load_for(cfg, data).dataset;
  const AnchorArtifact art = load_anchor_artifact(anchors);
  check_anchor_fit(art.anchors, ds, anchors);
  const AlignTraining t = with_context(data, [&] { return compute_alignment(cfg, ds, art.anchors); });
  write_config(cfg, out);
  save_align_model(out / "align.ckpt", t.model);
  write_file(out / "align_trace.txt", trace_text(t.trace));
}

EvalReport cmd_eval(const RunConfig& cfg, const fs::path& data, const fs::path& anchors,
                    const fs::path& model, EvalMode mode, const fs::path& out) {
  const Dataset ds = load_for(cfg, data).dataset;
  const AnchorArtifact art = load_anchor_artifact(anchors);
  check_anchor_fit(art.anchors, ds, anchors);
  const AlignModel m = load_align_model(model);
  const EvalReport report = with_context(data, [&] { return compute_report(cfg, ds, art.anchors, m, mode); });
  write_config(cfg, out);
  write_file(out / "report.txt", report.to_key_value());
  write_file(out / "report.csv", report.to_table());
  return report;
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    RunConfig probe;
    probe.set("alpha", tok);
    out.push_back(probe.alpha);
  }
  if (out.empty()) throw ConfigError("sweep: --alphas needs at least one value");
  for (double a : out) {
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("sweep: alpha " + shortest_repr(a) + " outside [0,1)");
  }
  return out;
}

std::vector<SweepRow> sweep_alpha(const RunConfig& cfg, const Dataset& ds, std::vector<double> alphas) {
  std::sort(alphas.begin(), alphas.end());
  std::vector<SweepRow> rows(alphas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i].alpha = alphas[i];
      RunConfig point = cfg;
      point.alpha = alphas[i];
      try {
        double total = 0.0;
        for (std::size_t r = 0; r < cfg.repeats; ++r) {
          point.seed = cfg.seed + r;
          total += run_pipeline(point, ds, EvalMode::kConventional).mca();
        }
        rows[i].mca = total / static_cast<double>(cfg.repeats);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const std::size_t threads = std::min(cfg.jobs, rows.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::string s = "alpha,status,mca,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    s += shortest_repr(r.alpha) + "," + (r.mca ? "ok," + format_double(*r.mca) : std::string("error,")) + "," +
         err + "\n";
  }
  return s;
}

std::vector<SweepRow> cmd_sweep_alpha(const RunConfig& cfg, const fs::path& data,
                                      const std::vector<double>& alphas, const fs::path& out) {
  const Dataset ds = load_for(cfg, data).dataset;
  std::vector<SweepRow> rows = sweep_alpha(cfg, ds, alphas);
  write_config(cfg, out);
  write_file(out / "sweep.csv", sweep_table(rows));
  return rows;
}

void cmd_export_anchors(const RunConfig& cfg, const fs::path& anchors, const fs::path& out) {
  const AnchorArtifact art = load_anchor_artifact(anchors);
  write_config(cfg, out);
  write_file(out / "anchors.txt", matrix_to_text(art.anchors.u));
  std::string nodes = "row,kind,index\n";
  for (std::size_t r = 0; r < art.anchors.u.rows(); ++r) {
    const bool is_class = r < art.anchors.num_classes;
    nodes += std::to_string(r) + (is_class ? ",class," : ",attribute,") +
             std::to_string(is_class ? r : r - art.anchors.num_classes) + "\n";
  }
  write_file(out / "nodes.csv", nodes);
}

}  // namespace dagda::cli
