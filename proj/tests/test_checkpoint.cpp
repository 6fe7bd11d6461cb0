#include <gtest/gtest.h>

#include <filesystem>

#include "dagda/errors.hpp"
#include "dagda/model_io.hpp"
#include "support.hpp"

using namespace dagda;
namespace fs = std::filesystem;

TEST(Checkpoint, SerializeRoundTrip) {
  Checkpoint c;
  c.kind = "demo";
  c.set("alpha", 0.8);
  c.set("name", "x y");
  c.add("A", Mat{{1, 2}});
  c.add("B", Mat(0, 0));
  const Checkpoint back = parse_checkpoint(serialize_checkpoint(c), "t");
  EXPECT_EQ(back.kind, "demo");
  EXPECT_EQ(back.get_double("alpha"), 0.8);
  EXPECT_EQ(back.get("name"), "x y");
  EXPECT_EQ(back.matrix("A"), (Mat{{1, 2}}));
  EXPECT_TRUE(back.has_matrix("B"));
  EXPECT_THROW((void)back.get("missing"), FormatError);
  EXPECT_THROW((void)back.matrix("C"), FormatError);
}

TEST(Checkpoint, RejectsCorruption) {
  Checkpoint c;
  c.kind = "demo";
  c.add("A", Mat{{1, 2}});
  const std::string bytes = serialize_checkpoint(c);
  EXPECT_THROW((void)parse_checkpoint("XXXX" + bytes.substr(4), "t"), MalformedHeaderError);
  EXPECT_THROW((void)parse_checkpoint(bytes.substr(0, bytes.size() - 4), "t"), TruncatedPayloadError);
  EXPECT_THROW((void)parse_checkpoint(bytes + "z", "t"), TrailingDataError);
}

TEST(ModelIo, AnchorArtifactRoundTrip) {
  Rng rng(1);
  AnchorArtifact a;
  AnchorModel m;
  m.weights = {fixtures::random_mat(rng, 7, 3), fixtures::random_mat(rng, 3, 7)};
  m.activations = {Activation::kTanh, Activation::kLinear};
  a.model = m;
  a.anchors.u = fixtures::random_mat(rng, 7, 3);
  a.anchors.num_classes = 3;
  const fs::path p = fs::temp_directory_path() / "dagda_anchor_rt.ckpt";
  save_anchor_artifact(p, a);
  const AnchorArtifact b = load_anchor_artifact(p);
  EXPECT_EQ(b.anchors.u, a.anchors.u);
  EXPECT_EQ(b.anchors.num_classes, 3u);
  ASSERT_TRUE(b.model.has_value());
  EXPECT_EQ(b.model->weights, m.weights);
  EXPECT_EQ(b.model->activations, m.activations);
  EXPECT_EQ(b.model->alpha, 0.8);
  EXPECT_THROW((void)load_align_model(p), FormatError);
  fs::remove(p);
}

TEST(ModelIo, AlignModelRoundTrip) {
  Rng rng(2);
  for (bool tied : {false, true}) {
    AlignModel m;
    m.w_cons = fixtures::random_mat(rng, 5, 2);
    if (!tied) m.w_recons = fixtures::random_mat(rng, 2, 5);
    m.m = fixtures::random_mat(rng, 2, 2);
    m.tied = tied;
    m.lambda1 = 0.3;
    const AlignModel back = align_model_from(parse_checkpoint(serialize_checkpoint(to_checkpoint(m)), "t"));
    EXPECT_EQ(back.w_cons, m.w_cons);
    EXPECT_EQ(back.w_recons, m.w_recons);
    EXPECT_EQ(back.m, m.m);
    EXPECT_EQ(back.tied, tied);
    EXPECT_EQ(back.lambda1, 0.3);
    EXPECT_EQ(back.lambda2, 5e-6);
  }
}
