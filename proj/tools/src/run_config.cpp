#include "dagda_cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "dagda/errors.hpp"
#include "dagda/matrix_io.hpp"

namespace dagda::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: " + key + " expects a nonnegative integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " expects true/false, got '" + v + "'");
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  bool flag = false;
};

template <class T>
Field field(T RunConfig::*member) {
  Field f;
  if constexpr (std::is_same_v<T, double>) {
    f.set = [member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = parse_double(k, v); };
    f.get = [member](const RunConfig& c) { return shortest_repr(c.*member); };
  } else if constexpr (std::is_same_v<T, bool>) {
    f.set = [member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = parse_bool(k, v); };
    f.get = [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); };
    f.flag = true;
  } else if constexpr (std::is_same_v<T, std::string>) {
    f.set = [member](RunConfig& c, const std::string&, const std::string& v) { c.*member = v; };
    f.get = [member](const RunConfig& c) { return c.*member; };
  } else {
    f.set = [member](RunConfig& c, const std::string& k, const std::string& v) {
      c.*member = static_cast<T>(parse_u64(k, v));
    };
    f.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
  }
  return f;
}

// Ordered: echo() prints keys in this order.
const std::vector<std::pair<std::string, Field>>& registry() {
  static const std::vector<std::pair<std::string, Field>> r = {
      {"alpha", field(&RunConfig::alpha)},
      {"p", field(&RunConfig::p)},
      {"dataset", field(&RunConfig::dataset)},
      {"anchor_dim", field(&RunConfig::anchor_dim)},
      {"anchor_epochs", field(&RunConfig::anchor_epochs)},
      {"anchor_lr", field(&RunConfig::anchor_lr)},
      {"hidden_activation", field(&RunConfig::hidden_activation)},
      {"output_activation", field(&RunConfig::output_activation)},
      {"pca_anchors", field(&RunConfig::pca_anchors)},
      {"normalize_anchors", field(&RunConfig::normalize_anchors)},
      {"align_epochs", field(&RunConfig::align_epochs)},
      {"lambda1", field(&RunConfig::lambda1)},
      {"lambda2", field(&RunConfig::lambda2)},
      {"batch_size", field(&RunConfig::batch_size)},
      {"align_lr", field(&RunConfig::align_lr)},
      {"tied_weights", field(&RunConfig::tied_weights)},
      {"no_reg", field(&RunConfig::no_reg)},
      {"raw_loss", field(&RunConfig::raw_loss)},
      {"cosine_scores", field(&RunConfig::cosine_scores)},
      {"holdout_every", field(&RunConfig::holdout_every)},
      {"drop_empty_classes", field(&RunConfig::drop_empty_classes)},
      {"drop_empty_attributes", field(&RunConfig::drop_empty_attributes)},
      {"seed", field(&RunConfig::seed)},
      {"repeats", field(&RunConfig::repeats)},
      {"jobs", field(&RunConfig::jobs)},
      {"classes", field(&RunConfig::classes)},
      {"attributes", field(&RunConfig::attributes)},
      {"samples_per_class", field(&RunConfig::samples_per_class)},
      {"feature_dim", field(&RunConfig::feature_dim)},
      {"noise", field(&RunConfig::noise)},
      {"density", field(&RunConfig::density)},
  };
  return r;
}

const Field& lookup(const std::string& key) {
  for (const auto& [name, f] : registry())
    if (name == key) return f;
  throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

std::string shortest_repr(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  lookup(key).set(*this, key, trim(value));
}

std::string RunConfig::get(const std::string& key) const { return lookup(key).get(*this); }

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : registry()) out.push_back(name);
    return out;
  }();
  return k;
}

bool RunConfig::is_flag(const std::string& key) { return lookup(key).flag; }

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& [name, f] : registry()) out += name + "=" + f.get(*this) + "\n";
  return out;
}

std::size_t preset_anchor_dim(const std::string& dataset) {
  static const std::map<std::string, std::size_t> dims = {{"awa2", 32}, {"cub", 256}, {"sun", 64}, {"apy", 64}};
  const auto it = dims.find(dataset);
  return it == dims.end() ? 0 : it->second;
}

void RunConfig::finalize() {
  if (anchor_dim == 0) {
    const std::size_t preset = preset_anchor_dim(dataset);
    anchor_dim = preset ? preset : 32;
  }
}

void RunConfig::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("config: alpha must lie in [0,1)");
  if (anchor_dim == 0) throw ConfigError("config: anchor_dim must be >= 1");
  if (anchor_epochs == 0 || align_epochs == 0) throw ConfigError("config: epoch counts must be >= 1");
  if (batch_size == 0) throw ConfigError("config: batch_size must be >= 1");
  if (lambda1 < 0.0 || lambda2 < 0.0) throw ConfigError("config: lambda1 and lambda2 must be >= 0");
  if (!(anchor_lr > 0.0) || !(align_lr > 0.0)) throw ConfigError("config: learning rates must be > 0");
  if (!dataset.empty() && preset_anchor_dim(dataset) == 0) {
    throw ConfigError("config: unknown dataset '" + dataset + "' (known: awa2, cub, sun, apy)");
  }
  if (repeats == 0) throw ConfigError("config: repeats must be >= 1");
  if (jobs == 0) throw ConfigError("config: jobs must be >= 1");
  (void)parse_activation(hidden_activation);
  (void)parse_activation(output_activation);
}

AnchorConfig RunConfig::anchor_config() const {
  AnchorConfig c;
  c.anchor_dim = anchor_dim;
  c.alpha = alpha;
  c.p = p;
  c.epochs = anchor_epochs;
  c.hidden_activation = parse_activation(hidden_activation);
  c.output_activation = parse_activation(output_activation);
  c.adam.learning_rate = anchor_lr;
  return c;
}

AlignConfig RunConfig::align_config() const {
  AlignConfig c;
  c.lambda1 = lambda1;
  c.lambda2 = lambda2;
  c.no_reg = no_reg;
  c.tied_weights = tied_weights;
  c.per_sample = !raw_loss;
  c.epochs = align_epochs;
  c.batch_size = batch_size;
  c.adam.learning_rate = align_lr;
  return c;
}

MetricOptions RunConfig::metric_options() const {
  MetricOptions m;
  m.drop_empty_classes = drop_empty_classes;
  m.score = cosine_scores ? ScoreKind::kCosine : ScoreKind::kInnerProduct;
  return m;
}

SynthConfig RunConfig::synth_config() const {
  SynthConfig s;
  s.num_classes = classes;
  s.num_attrs = attributes;
  s.samples_per_class = samples_per_class;
  s.feature_dim = feature_dim;
  s.noise = noise;
  s.density = density;
  s.seed = seed;
  return s;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& context) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(context + ":" + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    }
    try {
      cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(context + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RunConfig resolve_config(const std::filesystem::path& path,
                         const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  if (!path.empty()) apply_config_text(cfg, read_file(path), path.string());
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  cfg.finalize();
  cfg.validate();
  return cfg;
}

}  // namespace dagda::cli
