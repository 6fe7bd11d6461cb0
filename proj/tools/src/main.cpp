#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "dagda/errors.hpp"
#include "dagda_cli/commands.hpp"

namespace {

using dagda::cli::RunConfig;

struct Args {
  std::string config, out, data, anchors, model, mode = "conventional", alphas;
  std::map<std::string, CLI::Option*> key_opts;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "key=value config file");
  sub->add_option("--out", a.out, "output directory")->required();
  for (const auto& key : RunConfig::keys()) {
    CLI::Option* opt = sub->add_option("--" + key)->description("override for config key " + key);
    if (RunConfig::is_flag(key)) opt->expected(0, 1);
    a.key_opts[key] = opt;
  }
}

std::vector<std::pair<std::string, std::string>> collect_overrides(const Args& a) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& key : RunConfig::keys()) {
    const CLI::Option* opt = a.key_opts.at(key);
    if (opt->count() == 0) continue;
    const auto& res = opt->results();
    out.emplace_back(key, res.empty() || res.back().empty() ? "true" : res.back());
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"dagda: anchor-based zero-shot classification"};
  app.require_subcommand(1);
  Args a_synth, a_anchors, a_align, a_eval, a_sweep, a_export;

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset directory");
  add_common(synth, a_synth);

  auto* anchors = app.add_subcommand("anchors", "train the anchor auto-encoder (or PCA anchors)");
  add_common(anchors, a_anchors);
  anchors->add_option("--data", a_anchors.data, "dataset directory")->required();

  auto* align = app.add_subcommand("align", "train the alignment model on seen classes");
  add_common(align, a_align);
  align->add_option("--data", a_align.data, "dataset directory")->required();
  align->add_option("--anchors", a_align.anchors, "anchors checkpoint")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a trained model");
  add_common(eval, a_eval);
  eval->add_option("--data", a_eval.data, "dataset directory")->required();
  eval->add_option("--anchors", a_eval.anchors, "anchors checkpoint")->required();
  eval->add_option("--model", a_eval.model, "alignment checkpoint")->required();
  eval->add_option("--mode", a_eval.mode, "conventional or generalized");

  auto* sweep = app.add_subcommand("sweep-alpha", "run the pipeline for several alpha values");
  add_common(sweep, a_sweep);
  sweep->add_option("--data", a_sweep.data, "dataset directory")->required();
  sweep->add_option("--alphas", a_sweep.alphas, "comma-separated alpha values")->required();

  auto* exp = app.add_subcommand("export-anchors", "write anchors as text with a node table");
  add_common(exp, a_export);
  exp->add_option("--anchors", a_export.anchors, "anchors checkpoint")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(dagda::ExitCode::kUsage);
  }

  auto resolve = [](const Args& a) {
    RunConfig cfg = dagda::cli::resolve_config(a.config, collect_overrides(a));
    std::cout << cfg.echo() << std::flush;
    return cfg;
  };

  if (synth->parsed()) {
    dagda::cli::cmd_synth(resolve(a_synth), a_synth.out);
  } else if (anchors->parsed()) {
    dagda::cli::cmd_anchors(resolve(a_anchors), a_anchors.data, a_anchors.out);
  } else if (align->parsed()) {
    dagda::cli::cmd_align(resolve(a_align), a_align.data, a_align.anchors, a_align.out);
  } else if (eval->parsed()) {
    const auto mode = dagda::parse_eval_mode(a_eval.mode);
    const auto report =
        dagda::cli::cmd_eval(resolve(a_eval), a_eval.data, a_eval.anchors, a_eval.model, mode, a_eval.out);
    std::cout << report.to_key_value();
  } else if (sweep->parsed()) {
    const RunConfig cfg = resolve(a_sweep);
    const auto rows = dagda::cli::cmd_sweep_alpha(cfg, a_sweep.data,
                                                  dagda::cli::parse_alpha_list(a_sweep.alphas), a_sweep.out);
    std::cout << dagda::cli::sweep_table(rows);
  } else if (exp->parsed()) {
    dagda::cli::cmd_export_anchors(resolve(a_export), a_export.anchors, a_export.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dagda::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(dagda::ExitCode::kData);
  }
}
