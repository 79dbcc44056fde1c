#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "densecount/density.hpp"
#include "densecount/dgrd.hpp"
#include "densecount/errors.hpp"
#include "densecount/metrics.hpp"
#include "densecount/predictor.hpp"
#include "densecount/synthetic.hpp"
#include "densecount/transforms.hpp"

namespace densecount {
namespace {

std::string read_golden(const std::string& name) {
  std::ifstream f(std::string(DENSECOUNT_TEST_DATA_DIR) + "/golden/" + name, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Oracle, NoiseZeroIsIdentity) {
  SplitMix64 rng(1);
  const auto gt = generate_density_map({"a", {{3, 3}, {7, 2}}, 10, 10}, KernelSpec::fixed(1.0));
  const SplitMix64 before = rng;
  EXPECT_EQ(oracle_predict(gt, 0.0, rng), gt);
  EXPECT_EQ(rng, before);
}

TEST(Oracle, ScalesByOneFactorWithinBand) {
  SplitMix64 rng(2);
  const auto gt = generate_density_map({"a", {{3, 3}, {7, 2}}, 10, 10}, KernelSpec::fixed(1.0));
  for (int i = 0; i < 100; ++i) {
    const auto pred = oracle_predict(gt, 0.2, rng);
    const double f = integrate(pred) / integrate(gt);
    EXPECT_GE(f, 0.8 - 1e-12);
    EXPECT_LE(f, 1.2 + 1e-12);
    for (std::size_t j = 0; j < gt.size(); ++j) {
      EXPECT_NEAR(pred.values()[j], gt.values()[j] * f, 1e-12);
    }
  }
  EXPECT_THROW(oracle_predict(gt, -0.1, rng), ConfigError);
}

TEST(Oracle, NoiseZeroReportIsExactlyZero) {
  SplitMix64 rng(3);
  std::vector<CountPair> pairs;
  for (int i = 0; i < 20; ++i) {
    const auto set = synthetic::uniform_points("s" + std::to_string(i), 64, 48, 10 + i, rng);
    const auto gt = generate_density_map(set, KernelSpec::adaptive());
    const auto pred = oracle_predict(gt, 0.0, rng);
    pairs.push_back({set.image_id, integrate(pred), integrate(gt), {}, {}});
  }
  const auto r = make_report(pairs);
  EXPECT_EQ(r.n_images, 20u);
  EXPECT_EQ(r.mae, 0.0);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.overall_mae, 0.0);
  EXPECT_EQ(*r.mae_pct, 0.0);
  EXPECT_EQ(*r.overall_mae_pct, 0.0);
}

TEST(Oracle, FixedSeedReproducible) {
  const auto gt = generate_density_map({"a", {{3, 3}}, 10, 10}, KernelSpec::fixed(1.0));
  SplitMix64 a(9);
  SplitMix64 b(9);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(oracle_predict(gt, 0.1, a), oracle_predict(gt, 0.1, b));
}

TEST(Baseline, CountsWellSeparatedDisks) {
  SplitMix64 rng(25);
  const auto pts = synthetic::separated_points("d", 200, 160, 25, 24.0, 10.0, rng);
  ASSERT_EQ(pts.count(), 25u);
  const auto img = synthetic::disk_scene(pts, 4.0);
  const auto result = baseline_predict(img);
  EXPECT_EQ(result.detections.size(), 25u);
  EXPECT_NEAR(integrate(result.density), 25.0, 1e-9);
  // Every truth point has a detection within 2 px.
  for (const auto& p : pts.points) {
    double best = 1e9;
    for (const auto& d : result.detections) best = std::min(best, std::hypot(d.x - p.x, d.y - p.y));
    EXPECT_LT(best, 2.0);
  }
}

TEST(Baseline, BlankImageHasNoDetections) {
  const auto result = baseline_predict(Image(50, 40, 1, 200));
  EXPECT_TRUE(result.detections.empty());
  EXPECT_EQ(result.density.rows(), 40u);
  EXPECT_EQ(integrate(result.density), 0.0);
}

TEST(Baseline, OverlappingDisksUndercount) {
  // Two radius-5 disks whose centres are 2 px apart overlap by about 75%.
  const PointAnnotationSet pts{"o", {{40.0, 30.0}, {42.0, 30.0}}, 80, 60};
  const auto result = baseline_predict(synthetic::disk_scene(pts, 5.0));
  EXPECT_GE(result.detections.size(), 1u);
  EXPECT_LE(result.detections.size(), 2u);
}

TEST(Baseline, DeterministicBytes) {
  SplitMix64 rng(8);
  const auto pts = synthetic::separated_points("b", 120, 90, 12, 20.0, 8.0, rng);
  const auto img = synthetic::blob_scene(pts, 3.0);
  EXPECT_EQ(dgrd::encode(baseline_predict(img).density), dgrd::encode(baseline_predict(img).density));
}

TEST(Baseline, AcceptsColourInput) {
  SplitMix64 rng(10);
  const auto pts = synthetic::separated_points("c", 100, 100, 9, 22.0, 10.0, rng);
  const auto gray = synthetic::blob_scene(pts, 3.0);
  EXPECT_EQ(baseline_predict(to_rgb(gray)).detections.size(), baseline_predict(gray).detections.size());
}

TEST(Baseline, NccRangeAndPeakAtBlob) {
  const PointAnnotationSet pts{"n", {{20.5, 15.5}}, 40, 30};
  const auto img = synthetic::blob_scene(pts, 3.0);
  const auto r = ncc_response(img, 3.0);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_LE(r[i], 1.0 + 1e-9);
    EXPECT_GE(r[i], -1.0 - 1e-9);
    if (r[i] > r[arg]) arg = i;
  }
  EXPECT_EQ(arg, 15u * 40 + 20);
  EXPECT_THROW(ncc_response(img, 0.0), ConfigError);
}

TEST(TrainingManifest, PerKindValues) {
  const auto cr1 = emit_training_manifest(DatasetKind::Cr1Like);
  EXPECT_EQ(cr1.initial_learning_rate, 1e-5);
  EXPECT_EQ(cr1.batch_size, 20);
  const auto cr2 = emit_training_manifest(DatasetKind::Cr2Like);
  EXPECT_EQ(cr2.initial_learning_rate, 1e-4);
  EXPECT_EQ(cr2.batch_size, 4);
  for (const auto& m : {cr1, cr2}) {
    EXPECT_EQ(m.optimizer, "Adam");
    EXPECT_EQ(m.max_epochs, 200);
    EXPECT_EQ(m.lr_decay_factor, 0.1);
    EXPECT_EQ(m.lr_decay_every_epochs, 50);
    EXPECT_EQ(m.frozen_layers, "first ten VGG-16 layers");
  }
}

TEST(TrainingManifest, MatchesGoldenFiles) {
  EXPECT_EQ(format_training_manifest(emit_training_manifest(DatasetKind::Cr1Like)),
            read_golden("training_manifest_cr1.txt"));
  EXPECT_EQ(format_training_manifest(emit_training_manifest(DatasetKind::Cr2Like)),
            read_golden("training_manifest_cr2.txt"));
}

TEST(TrainingManifest, KindNames) {
  EXPECT_EQ(parse_dataset_kind("cr1-like"), DatasetKind::Cr1Like);
  EXPECT_EQ(parse_dataset_kind("CR2-like"), DatasetKind::Cr2Like);
  EXPECT_EQ(to_string(DatasetKind::Cr2Like), "CR2-like");
  EXPECT_THROW(parse_dataset_kind("CR3"), ConfigError);
}

// Mean berries per quarter-area training patch on synthetic images dense
// enough that a patch should hold about `target` of them.
double mean_patch_count(double target, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int w = 600;
  const int h = 800;
  const auto set = synthetic::uniform_points("p", w, h, static_cast<std::size_t>(4 * target), rng);
  double total = 0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    const Rect r = random_patch(w, h, rng);
    for (const auto& p : set.points) {
      total += (p.x >= r.x && p.x < r.x + r.width && p.y >= r.y && p.y < r.y + r.height) ? 1 : 0;
    }
  }
  return total / draws;
}

TEST(PatchStream, QuarterAreaPatchesAverageExpectedCounts) {
  EXPECT_NEAR(mean_patch_count(71, 1), 71, 71 * 0.1);
  EXPECT_NEAR(mean_patch_count(427, 2), 427, 427 * 0.1);
}

}  // namespace
}  // namespace densecount
