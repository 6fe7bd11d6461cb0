#include "dagda/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "dagda/errors.hpp"

namespace dagda {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_labels_in(const LabeledBatch& batch, const SplitSpec& split, bool want_seen,
                       const char* what) {
  for (std::size_t i = 0; i < batch.labels.size(); ++i) {
    const std::size_t c = batch.labels[i];
    const bool ok = want_seen ? split.is_seen(c) : split.is_unseen(c);
    if (!ok) {
      throw ProtocolError(std::string(what) + ": sample " + std::to_string(i) + " has class " +
                          std::to_string(c) + ", which is not " +
                          (want_seen ? "a seen" : "an unseen") + " class");
    }
  }
}

double mean_accuracy(const std::vector<ClassAccuracy>& classes) {
  if (classes.empty()) throw MetricUndefinedError("mca: no classes to average");
  double sum = 0.0;
  for (const auto& c : classes) sum += c.accuracy;
  return sum / static_cast<double>(classes.size());
}

}  // namespace

void SplitSpec::normalize() {
  auto tidy = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  tidy(seen);
  tidy(unseen);
  std::vector<std::size_t> both;
  std::set_intersection(seen.begin(), seen.end(), unseen.begin(), unseen.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    throw SplitOverlapError("split: class " + std::to_string(both.front()) +
                            " is listed as both seen and unseen");
  }
}

bool SplitSpec::is_seen(std::size_t c) const {
  return std::binary_search(seen.begin(), seen.end(), c);
}

bool SplitSpec::is_unseen(std::size_t c) const {
  return std::binary_search(unseen.begin(), unseen.end(), c);
}

std::vector<std::size_t> SplitSpec::all_classes() const {
  std::vector<std::size_t> out;
  std::merge(seen.begin(), seen.end(), unseen.begin(), unseen.end(), std::back_inserter(out));
  return out;
}

std::vector<ClassAccuracy> per_class_accuracy(std::span<const std::size_t> preds,
                                              std::span<const std::size_t> labels,
                                              std::span<const std::size_t> class_set,
                                              const MetricOptions& opts) {
  if (preds.size() != labels.size()) {
    throw DimensionError("mca: " + std::to_string(preds.size()) + " predictions for " +
                         std::to_string(labels.size()) + " labels");
  }
  std::map<std::size_t, ClassAccuracy> tally;
  for (std::size_t c : class_set) tally[c].class_id = c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = tally.find(labels[i]);
    if (it == tally.end()) {
      throw ProtocolError("mca: label " + std::to_string(labels[i]) + " of sample " +
                          std::to_string(i) + " is outside the evaluated class set");
    }
    ++it->second.count;
    if (preds[i] == labels[i]) ++it->second.correct;
  }
  std::vector<ClassAccuracy> out;
  for (std::size_t c : class_set) {
    ClassAccuracy acc = tally.at(c);
    if (acc.count == 0) {
      if (opts.drop_empty_classes) continue;
      throw MetricUndefinedError("mca: class " + std::to_string(c) + " has no test samples");
    }
    acc.accuracy = static_cast<double>(acc.correct) / static_cast<double>(acc.count);
    out.push_back(acc);
  }
  return out;
}

double mca(std::span<const std::size_t> preds, std::span<const std::size_t> labels,
           std::span<const std::size_t> class_set, const MetricOptions& opts) {
  return mean_accuracy(per_class_accuracy(preds, labels, class_set, opts));
}

double harmonic_mean(double mca_seen, double mca_unseen) {
  const double denom = mca_seen + mca_unseen;
  if (denom == 0.0) return 0.0;
  return 2.0 * mca_seen * mca_unseen / denom;
}

EvalReport evaluate_conventional(const AlignModel& model, const AnchorSet& anchors,
                                 const LabeledBatch& test, const SplitSpec& split,
                                 const MetricOptions& opts) {
  test.validate();
  if (split.unseen.empty()) throw ProtocolError("conventional evaluation: no unseen classes");
  require_labels_in(test, split, false, "conventional evaluation");
  const auto preds = classify(model, test.x, anchors, split.unseen, opts.score);

  EvalReport report;
  report.mode = EvalMode::kConventional;
  report.classes = per_class_accuracy(preds, test.labels, split.unseen, opts);
  report.mca_unseen = mean_accuracy(report.classes);
  return report;
}

EvalReport evaluate_generalized(const AlignModel& model, const AnchorSet& anchors,
                                const LabeledBatch& seen_test, const LabeledBatch& unseen_test,
                                const SplitSpec& split, const MetricOptions& opts) {
  seen_test.validate();
  unseen_test.validate();
  if (seen_test.size() == 0) throw MetricUndefinedError("generalized evaluation: no seen test samples");
  if (unseen_test.size() == 0) {
    throw MetricUndefinedError("generalized evaluation: no unseen test samples, H undefined");
  }
  require_labels_in(seen_test, split, true, "generalized evaluation (seen)");
  require_labels_in(unseen_test, split, false, "generalized evaluation (unseen)");

  const auto all = split.all_classes();
  const auto seen_preds = classify(model, seen_test.x, anchors, all, opts.score);
  const auto unseen_preds = classify(model, unseen_test.x, anchors, all, opts.score);

  EvalReport report;
  report.mode = EvalMode::kGeneralized;
  auto seen_acc = per_class_accuracy(seen_preds, seen_test.labels, split.seen, opts);
  auto unseen_acc = per_class_accuracy(unseen_preds, unseen_test.labels, split.unseen, opts);
  report.mca_seen = mean_accuracy(seen_acc);
  report.mca_unseen = mean_accuracy(unseen_acc);
  report.h = harmonic_mean(*report.mca_seen, report.mca_unseen);
  report.classes = std::move(seen_acc);
  report.classes.insert(report.classes.end(), unseen_acc.begin(), unseen_acc.end());
  return report;
}

std::string EvalReport::to_key_value() const {
  std::ostringstream os;
  os << "mode=" << eval_mode_name(mode) << '\n';
  os << "classes=" << classes.size() << '\n';
  if (mca_seen) os << "mca_s=" << fmt17(*mca_seen) << '\n';
  os << "mca_u=" << fmt17(mca_unseen) << '\n';
  if (h) os << "h=" << fmt17(*h) << '\n';
  os << "mca=" << fmt17(mca()) << '\n';
  return os.str();
}

std::string EvalReport::to_table() const {
  std::ostringstream os;
  os << "class_id,n,acc\n";
  for (const auto& c : classes) {
    os << c.class_id << ',' << c.count << ',' << fmt17(c.accuracy) << '\n';
  }
  if (mca_seen) os << "MCA_s,," << fmt17(*mca_seen) << '\n';
  os << "MCA_u,," << fmt17(mca_unseen) << '\n';
  if (h) os << "H,," << fmt17(*h) << '\n';
  return os.str();
}

std::string_view eval_mode_name(EvalMode mode) noexcept {
  return mode == EvalMode::kConventional ? "conventional" : "generalized";
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "conventional") return EvalMode::kConventional;
  if (name == "generalized") return EvalMode::kGeneralized;
  throw ConfigError("unknown evaluation mode '" + std::string(name) +
                    "' (conventional, generalized)");
}

}  // namespace dagda
