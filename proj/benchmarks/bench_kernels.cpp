#include <benchmark/benchmark.h>

#include "dagda/align.hpp"
#include "dagda/anchor.hpp"
#include "dagda/graph.hpp"
#include "dagda/rng.hpp"

using namespace dagda;

namespace {

Mat uniform_mat(Rng& rng, std::size_t r, std::size_t c) {
  Mat m(r, c);
  for (double& v : m.values()) v = rng.uniform(-1.0, 1.0);
  return m;
}

Mat binary_class_attr(Rng& rng, std::size_t dc, std::size_t dt) {
  Mat c(dc, dt);
  for (std::size_t i = 0; i < dc; ++i) {
    for (std::size_t j = 0; j < dt; ++j) c(i, j) = rng.uniform() < 0.3 ? 1.0 : 0.0;
    c(i, i % dt) = 1.0;
  }
  for (std::size_t j = 0; j < dt; ++j) c(j % dc, j) = 1.0;
  return c;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Mat a = uniform_mat(rng, n, n), b = uniform_mat(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(32, 256);

void BM_TruncatedDiffusion(benchmark::State& state) {
  const auto dc = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  const BipartiteGraph g = build_graph(binary_class_attr(rng, dc, dc * 3 / 2));
  const Mat x = uniform_mat(rng, g.num_nodes(), 32);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_diffusion(g, 0.8, p, x));
}
BENCHMARK(BM_TruncatedDiffusion)->Args({20, 2})->Args({50, 2})->Args({200, 2})->Args({200, 8});

void BM_AnchorLoss(benchmark::State& state) {
  const auto dc = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const BipartiteGraph g = build_graph(binary_class_attr(rng, dc, dc * 3 / 2));
  AnchorConfig cfg;
  cfg.anchor_dim = 32;
  const AnchorModel m = init_anchor_model(g, cfg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(anchor_loss(m, g, g.node_features()));
}
BENCHMARK(BM_AnchorLoss)->Arg(20)->Arg(50)->Arg(200);

void BM_AlignLoss(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const std::size_t dx = 512, d = 64, dc = 50, dt = 85;
  Rng rng(4);
  LabeledBatch b;
  b.x = uniform_mat(rng, batch, dx);
  b.num_classes = dc;
  for (std::size_t i = 0; i < batch; ++i) b.labels.push_back(rng.below(dc));
  AnchorSet anchors;
  anchors.u = uniform_mat(rng, dc + dt, d);
  anchors.num_classes = dc;
  const Mat c = binary_class_attr(rng, dc, dt);
  const AlignModel m = init_align_model(dx, d, AlignConfig{}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(align_loss(m, b, anchors, c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_AlignLoss)->Arg(64)->Arg(256);

}  // namespace
