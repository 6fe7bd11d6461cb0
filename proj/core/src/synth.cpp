#include "dagda/synth.hpp"

#include <cmath>

#include "dagda/errors.hpp"
#include "dagda/rng.hpp"

namespace dagda {

namespace {

struct Generated {
  Mat class_attr;
  Mat centers;
};

bool row_empty(const Mat& m, std::size_t i) {
  for (double v : m.row(i))
    if (v != 0.0) return false;
  return true;
}

bool rows_equal(const Mat& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(a, j) != m(b, j)) return false;
  return true;
}

bool duplicates_earlier(const Mat& m, std::size_t i) {
  for (std::size_t k = 0; k < i; ++k)
    if (rows_equal(m, k, i)) return true;
  return false;
}

Generated generate(const SynthConfig& cfg, Rng& attr_rng, Rng& map_rng) {
  const std::size_t dc = cfg.num_classes, dt = cfg.num_attrs;
  Mat c(dc, dt);
  constexpr int kMaxDraws = 10000;
  for (std::size_t i = 0; i < dc; ++i) {
    int draws = 0;
    do {
      if (++draws > kMaxDraws) {
        throw ConfigError("synth: cannot draw " + std::to_string(dc) +
                          " distinct nonempty attribute rows; raise num_attrs or density");
      }
      for (std::size_t j = 0; j < dt; ++j) c(i, j) = attr_rng.uniform() < cfg.density ? 1.0 : 0.0;
    } while (row_empty(c, i) || duplicates_earlier(c, i));
  }
  for (std::size_t j = 0; j < dt; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < dc; ++i) any = any || c(i, j) != 0.0;
    // Redrawing an all-zero column only adds ones, so rows stay nonempty.
    while (!any) {
      for (std::size_t i = 0; i < dc; ++i) {
        c(i, j) = attr_rng.uniform() < cfg.density ? 1.0 : 0.0;
        any = any || c(i, j) != 0.0;
      }
    }
  }
  const Mat lift = gaussian_mat(map_rng, dt, cfg.feature_dim, 1.0 / std::sqrt(static_cast<double>(dt)));
  return {c, matmul(c, lift)};
}

}  // namespace

void SynthConfig::validate() const {
  if (num_classes < 4) throw ConfigError("synth: num_classes must be >= 4 for a seen/unseen split");
  if (num_attrs < 1 || samples_per_class < 1 || feature_dim < 1) {
    throw ConfigError("synth: counts must be >= 1");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw ConfigError("synth: noise must be >= 0");
  if (!(density > 0.0 && density <= 1.0)) throw ConfigError("synth: density must lie in (0,1]");
}

Dataset synth_dataset(const SynthConfig& cfg) {
  cfg.validate();
  Rng root(cfg.seed);
  Rng attr_rng = root.split();
  Rng map_rng = root.split();
  Rng noise_rng = root.split();
  const Generated gen = generate(cfg, attr_rng, map_rng);

  Dataset ds;
  ds.class_attr = gen.class_attr;
  const std::size_t n = cfg.num_classes * cfg.samples_per_class;
  ds.features = Mat(n, cfg.feature_dim);
  ds.labels.reserve(n);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cfg.num_classes; ++c) {
    for (std::size_t s = 0; s < cfg.samples_per_class; ++s, ++row) {
      ds.labels.push_back(c);
      for (std::size_t j = 0; j < cfg.feature_dim; ++j) {
        ds.features(row, j) = gen.centers(c, j) + cfg.noise * noise_rng.normal();
      }
    }
  }
  const std::size_t unseen = (cfg.num_classes + 3) / 4;
  for (std::size_t c = 0; c < cfg.num_classes; ++c) {
    (c + unseen < cfg.num_classes ? ds.split.seen : ds.split.unseen).push_back(c);
  }
  ds.validate();
  return ds;
}

Mat synth_centers(const SynthConfig& cfg) {
  cfg.validate();
  Rng root(cfg.seed);
  Rng attr_rng = root.split();
  Rng map_rng = root.split();
  return generate(cfg, attr_rng, map_rng).centers;
}

}  // namespace dagda
