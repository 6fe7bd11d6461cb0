#include "dagda/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dagda/errors.hpp"
#include "dagda/graph.hpp"
#include "dagda/matrix_io.hpp"

namespace dagda {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::size_t> parse_ids(std::string_view text, const std::string& context) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::string_view(" \t\r\n,").find(text[pos]) != std::string_view::npos) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && std::string_view(" \t\r\n,").find(text[end]) == std::string_view::npos) ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(context + ": '" + std::string(tok) + "' is not a nonnegative integer id");
    }
    out.push_back(v);
    pos = end;
  }
  return out;
}

std::vector<std::string> read_names(const fs::path& path) {
  std::vector<std::string> names;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (!t.empty()) names.emplace_back(t);
  }
  return names;
}

fs::path find_matrix(const fs::path& dir, const std::string& stem) {
  for (const char* ext : {".dmat", ".txt"}) {
    fs::path p = dir / (stem + ext);
    if (fs::exists(p)) return p;
  }
  throw MissingFileError(dir.string() + ": missing " + stem + ".dmat (or " + stem + ".txt)");
}

fs::path require_file(const fs::path& dir, const std::string& name) {
  fs::path p = dir / name;
  if (!fs::exists(p)) throw MissingFileError(dir.string() + ": missing " + name);
  return p;
}

std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

Mat drop_columns(const Mat& m, const std::vector<std::size_t>& keep) {
  Mat out(m.rows(), keep.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = m(i, keep[j]);
  return out;
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& context) {
  return parse_ids(text, context);
}

SplitSpec parse_split(const std::string& text, const std::string& context) {
  SplitSpec split;
  bool have_seen = false, have_unseen = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(context + ": expected 'seen:' or 'unseen:' line, got '" + std::string(t) + "'");
    }
    const auto key = trim(t.substr(0, colon));
    auto ids = parse_ids(t.substr(colon + 1), context);
    if (key == "seen" && !have_seen) {
      split.seen = std::move(ids);
      have_seen = true;
    } else if (key == "unseen" && !have_unseen) {
      split.unseen = std::move(ids);
      have_unseen = true;
    } else {
      throw ParseError(context + ": unexpected or repeated key '" + std::string(key) + "'");
    }
  }
  if (!have_seen || !have_unseen) {
    throw ParseError(context + ": both 'seen:' and 'unseen:' lines are required");
  }
  try {
    split.normalize();
  } catch (const SplitOverlapError& e) {
    throw SplitOverlapError(context + ": " + e.what());
  }
  return split;
}

std::string format_split(const SplitSpec& split) {
  return "seen: " + join_ids(split.seen) + "\nunseen: " + join_ids(split.unseen) + "\n";
}

void Dataset::validate() const {
  if (features.rows() != labels.size()) {
    throw ValidationError("dataset: " + std::to_string(features.rows()) + " feature rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  const std::size_t dc = num_classes();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= dc) {
      throw LabelRangeError("dataset: label " + std::to_string(labels[i]) + " of sample " +
                            std::to_string(i) + " is out of range (" + std::to_string(dc) +
                            " classes)");
    }
  }
  SplitSpec s = split;
  s.normalize();
  for (const auto* ids : {&s.seen, &s.unseen}) {
    for (std::size_t c : *ids) {
      if (c >= dc) {
        throw LabelRangeError("dataset: split references class " + std::to_string(c) + " (" +
                              std::to_string(dc) + " classes)");
      }
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!s.is_seen(labels[i]) && !s.is_unseen(labels[i])) {
      throw SplitCoverageError("dataset: class " + std::to_string(labels[i]) + " of sample " +
                               std::to_string(i) + " is neither seen nor unseen");
    }
  }
  if (train_indices) {
    for (std::size_t idx : *train_indices) {
      if (idx >= labels.size()) {
        throw LabelRangeError("dataset: training index " + std::to_string(idx) + " out of range (" +
                              std::to_string(labels.size()) + " samples)");
      }
    }
  }
  if (!class_names.empty() && class_names.size() != dc) {
    throw ValidationError("dataset: " + std::to_string(class_names.size()) + " class names for " +
                          std::to_string(dc) + " classes");
  }
  if (!attr_names.empty() && attr_names.size() != num_attrs()) {
    throw ValidationError("dataset: " + std::to_string(attr_names.size()) +
                          " attribute names for " + std::to_string(num_attrs()) + " attributes");
  }
  (void)build_graph(class_attr);
}

LabeledBatch Dataset::batch(std::span<const std::size_t> rows) const {
  LabeledBatch b;
  b.x = gather_rows(features, rows);
  b.num_classes = num_classes();
  b.labels.reserve(rows.size());
  for (std::size_t r : rows) b.labels.push_back(labels.at(r));
  return b;
}

LoadResult load_dataset(const fs::path& dir, const LoadOptions& opts) {
  if (!fs::is_directory(dir)) throw MissingFileError(dir.string() + ": dataset directory not found");
  LoadResult result;
  Dataset& ds = result.dataset;
  ds.features = load_matrix(find_matrix(dir, "features"));
  ds.class_attr = load_matrix(find_matrix(dir, "class_attr"));
  const fs::path labels_path = require_file(dir, "labels.txt");
  ds.labels = parse_ids(read_file(labels_path), labels_path.string());
  const fs::path split_path = require_file(dir, "split.txt");
  ds.split = parse_split(read_file(split_path), split_path.string());
  if (fs::exists(dir / "train.txt")) {
    ds.train_indices = parse_ids(read_file(dir / "train.txt"), (dir / "train.txt").string());
  }
  if (fs::exists(dir / "classes.txt")) ds.class_names = read_names(dir / "classes.txt");
  if (fs::exists(dir / "attributes.txt")) ds.attr_names = read_names(dir / "attributes.txt");

  if (opts.drop_empty_attributes) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < ds.class_attr.cols(); ++j) {
      bool any = false;
      for (std::size_t i = 0; i < ds.class_attr.rows(); ++i) any = any || ds.class_attr(i, j) > 0.0;
      if (any) {
        keep.push_back(j);
      } else {
        result.warnings.push_back("dropping attribute " + std::to_string(j) +
                                  ": no class has a positive weight");
      }
    }
    if (keep.size() != ds.class_attr.cols()) {
      ds.class_attr = drop_columns(ds.class_attr, keep);
      if (!ds.attr_names.empty()) {
        std::vector<std::string> names;
        for (std::size_t j : keep) names.push_back(ds.attr_names.at(j));
        ds.attr_names = std::move(names);
      }
    }
  }
  ds.validate();
  return result;
}

void save_dataset(const fs::path& dir, const Dataset& ds, bool text_matrices) {
  fs::create_directories(dir);
  const char* ext = text_matrices ? ".txt" : ".dmat";
  save_matrix(dir / (std::string("features") + ext), ds.features);
  save_matrix(dir / (std::string("class_attr") + ext), ds.class_attr);
  std::string labels;
  for (std::size_t l : ds.labels) labels += std::to_string(l) + "\n";
  write_file(dir / "labels.txt", labels);
  write_file(dir / "split.txt", format_split(ds.split));
  if (ds.train_indices) write_file(dir / "train.txt", join_ids(*ds.train_indices) + "\n");
  auto write_names = [&](const char* name, const std::vector<std::string>& names) {
    if (names.empty()) return;
    std::string out;
    for (const auto& n : names) out += n + "\n";
    write_file(dir / name, out);
  };
  write_names("classes.txt", ds.class_names);
  write_names("attributes.txt", ds.attr_names);
}

SamplePartition partition_samples(const Dataset& ds, std::size_t holdout_every) {
  SplitSpec split = ds.split;
  split.normalize();
  SamplePartition out;
  std::vector<bool> in_train(ds.num_samples(), false);
  if (ds.train_indices) {
    for (std::size_t idx : *ds.train_indices) {
      if (idx >= ds.num_samples()) {
        throw LabelRangeError("training index " + std::to_string(idx) + " out of range");
      }
      if (!split.is_seen(ds.labels[idx])) {
        throw ProtocolError("training sample " + std::to_string(idx) + " belongs to class " +
                            std::to_string(ds.labels[idx]) +
                            ", which is not a seen class; unseen classes must not be trained on");
      }
      if (!in_train[idx]) out.train.push_back(idx);
      in_train[idx] = true;
    }
  } else {
    std::vector<std::size_t> ordinal(ds.num_classes(), 0);
    for (std::size_t i = 0; i < ds.num_samples(); ++i) {
      const std::size_t c = ds.labels[i];
      if (!split.is_seen(c)) continue;
      const std::size_t k = ordinal[c]++;
      const bool held_out = holdout_every > 0 && k % holdout_every == holdout_every - 1;
      if (!held_out) {
        out.train.push_back(i);
        in_train[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < ds.num_samples(); ++i) {
    if (split.is_unseen(ds.labels[i])) {
      out.unseen_test.push_back(i);
    } else if (!in_train[i]) {
      out.seen_test.push_back(i);
    }
  }
  return out;
}

}  // namespace dagda
