#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "densecount/dgrd.hpp"
#include "densecount/image.hpp"
#include "densecount/report_io.hpp"
#include "densecount/transforms.hpp"
#include "densecount/synthetic.hpp"
#include "fixtures.hpp"

namespace densecount {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& path, std::string_view text) { std::ofstream(path, std::ios::binary) << text; }

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"densify", "--annotations", "x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DensifyFixedSinglePoint) {
  const auto dir = fixtures::temp_dir("cli_densify1");
  write(dir / "one.ann", "solo\t40\t30\n20\t15\n");
  const auto r = run({"densify", "--annotations", (dir / "one.ann").string(), "--out-dir",
                      (dir / "gt").string(), "--sigma", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "solo 1 1.000000\n");
  EXPECT_TRUE(fs::exists(dir / "gt" / "solo.dgrd"));
}

TEST(Cli, DensifyAdaptiveSortedAndReproducible) {
  const auto dir = fixtures::temp_dir("cli_densify2");
  SplitMix64 rng(4);
  std::vector<AnnotatedImage> images;
  for (const char* id : {"zeta", "alpha", "mid"}) {
    images.push_back({synthetic::uniform_points(id, 120, 90, 50, rng), "V"});
  }
  write(dir / "a.ann", format_annotations(images));
  const std::vector<std::string> args = {"densify", "--annotations", (dir / "a.ann").string(),
                                         "--out-dir", (dir / "one").string(), "--adaptive",
                                         "--k", "3", "--beta", "0.3"};
  const auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 9), "alpha 50 ");
  EXPECT_NE(r.out.find("\nzeta 50 "), std::string::npos);

  auto again = args;
  again[4] = (dir / "two").string();
  ASSERT_EQ(run(again).code, 0);
  for (const char* id : {"zeta", "alpha", "mid"}) {
    EXPECT_EQ(slurp(dir / "one" / (std::string(id) + ".dgrd")), slurp(dir / "two" / (std::string(id) + ".dgrd")));
  }
}

TEST(Cli, DensifyRejectsConflictingKernelFlags) {
  const auto dir = fixtures::temp_dir("cli_densify3");
  write(dir / "one.ann", "solo\t40\t30\n20\t15\n");
  EXPECT_EQ(run({"densify", "--annotations", (dir / "one.ann").string(), "--out-dir", dir.string(),
                 "--adaptive", "--sigma", "3"})
                .code,
            2);
  EXPECT_EQ(run({"densify", "--annotations", (dir / "one.ann").string(), "--out-dir", dir.string(),
                 "--beta", "-1"})
                .code,
            1);
  EXPECT_EQ(run({"densify", "--annotations", (dir / "missing.ann").string(), "--out-dir",
                 dir.string()})
                .code,
            1);
}

TEST(Cli, SplitNeedsSeedAndIsDeterministic) {
  const auto dir = fixtures::temp_dir("cli_split");
  save_manifest(dir / "m.txt", fixtures::random_manifest(102, 7));
  EXPECT_EQ(run({"split", "--manifest", (dir / "m.txt").string(), "--output", (dir / "x.txt").string()}).code, 2);
  const auto a = run({"split", "--manifest", (dir / "m.txt").string(), "--folds", "5", "--seed", "11",
                      "--output", (dir / "a.txt").string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("fold 0: 21 images"), std::string::npos);
  EXPECT_NE(a.out.find("fold 4: 20 images"), std::string::npos);
  ASSERT_EQ(run({"split", "--manifest", (dir / "m.txt").string(), "--folds", "5", "--seed", "11",
                 "--output", (dir / "b.txt").string()})
                .code,
            0);
  EXPECT_EQ(slurp(dir / "a.txt"), slurp(dir / "b.txt"));
  EXPECT_EQ(load_manifest(dir / "a.txt").fold_count, 5);
  EXPECT_EQ(run({"split", "--manifest", (dir / "m.txt").string(), "--folds", "200", "--seed", "1",
                 "--output", (dir / "c.txt").string()})
                .code,
            1);
}

TEST(Cli, Stats) {
  const auto dir = fixtures::temp_dir("cli_stats");
  save_manifest(dir / "cr2.txt", fixtures::shaped_manifest({fixtures::cr2_shape()}, "CR2-like"));
  const auto r = run({"stats", "--manifest", (dir / "cr2.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Teroldego"), std::string::npos);
  EXPECT_NE(r.out.find("1109.71"), std::string::npos);
  EXPECT_NE(r.out.find("18865"), std::string::npos);
}

TEST(Cli, EvaluateByVarietyReconciles) {
  const auto dir = fixtures::temp_dir("cli_eval");
  const auto m = fixtures::shaped_manifest(fixtures::cr1_shape(), "CR1-like");
  save_manifest(dir / "m.txt", m);
  std::map<std::string, double> preds;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    preds[m.records[i].image_id] = static_cast<double>(m.records[i].annotation_count) + (i % 3 == 0 ? 2.0 : -1.0);
  }
  write(dir / "p.tsv", format_predictions(preds));
  const auto r = run({"evaluate", "--predictions", (dir / "p.tsv").string(), "--manifest",
                      (dir / "m.txt").string(), "--group-by", "variety", "--output-json",
                      (dir / "r.json").string(), "--output-table", (dir / "r.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = report_from_json(slurp(dir / "r.json"));
  ASSERT_EQ(report.groups.size(), 7u);
  double berries = 0;
  for (const auto& g : report.groups) berries += g.report.n_berries;
  EXPECT_EQ(berries, 17006.0);
  EXPECT_EQ(report.n_berries, 17006.0);
  EXPECT_EQ(slurp(dir / "r.txt"), r.out);
  EXPECT_NE(r.out.find("Pinot Noir"), std::string::npos);
}

TEST(Cli, EvaluateNoiseFreeOracleIsZero) {
  const auto dir = fixtures::temp_dir("cli_eval_zero");
  const auto m = fixtures::random_manifest(12, 2);
  save_manifest(dir / "m.txt", m);
  std::map<std::string, double> preds;
  for (const auto& rec : m.records) preds[rec.image_id] = static_cast<double>(rec.annotation_count);
  write(dir / "p.tsv", format_predictions(preds));
  const auto r = run({"evaluate", "--predictions", (dir / "p.tsv").string(), "--manifest",
                      (dir / "m.txt").string(), "--output-json", (dir / "r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = report_from_json(slurp(dir / "r.json"));
  EXPECT_EQ(report.mae, 0.0);
  EXPECT_EQ(report.mse, 0.0);
  EXPECT_EQ(report.overall_mae, 0.0);
}

TEST(Cli, EvaluateListsMissingIds) {
  const auto dir = fixtures::temp_dir("cli_eval_missing");
  save_manifest(dir / "m.txt", fixtures::random_manifest(3, 3));
  write(dir / "p.tsv", "ghost_one\t4\nghost_two\t5\n");
  const auto r = run({"evaluate", "--predictions", (dir / "p.tsv").string(), "--manifest",
                      (dir / "m.txt").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ghost_one"), std::string::npos);
  EXPECT_NE(r.err.find("ghost_two"), std::string::npos);
}

TEST(Cli, EvaluateByFoldAddsCrossFoldSummary) {
  const auto dir = fixtures::temp_dir("cli_eval_folds");
  const auto m = with_folds(fixtures::random_manifest(30, 5), 3, 1);
  save_manifest(dir / "m.txt", m);
  std::map<std::string, double> preds;
  int i = 0;
  for (const auto& rec : m.records) preds[rec.image_id] = static_cast<double>(rec.annotation_count) + (i++ % 5);
  write(dir / "p.tsv", format_predictions(preds));
  const auto r = run({"evaluate", "--predictions", (dir / "p.tsv").string(), "--manifest",
                      (dir / "m.txt").string(), "--group-by", "fold", "--output-json",
                      (dir / "r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = report_from_json(slurp(dir / "r.json"));
  ASSERT_TRUE(report.cross_fold);
  EXPECT_EQ(report.cross_fold->folds, 3u);
  EXPECT_NE(r.out.find("±"), std::string::npos);
}

TEST(Cli, YieldBerryModelFromBundledWeight) {
  const auto r = run({"yield", "--mode", "eq2", "--Na", "132.9", "--variety", "Chardonnay", "--year",
                      "2018", "--Nv", "4000", "--Nb", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("9037200.00 g"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("9037.2000 kg"), std::string::npos);
  EXPECT_NE(r.out.find("berry weight table: Chardonnay 2018"), std::string::npos);
}

TEST(Cli, YieldZeroFactorAndModelAgreement) {
  const auto zero = run({"yield", "--mode", "eq1", "--Nv", "4000", "--Nb", "0", "--Pb", "172"});
  ASSERT_EQ(zero.code, 0);
  EXPECT_NE(zero.out.find("yield = 0.00 g"), std::string::npos);
  const auto eq1 = run({"yield", "--mode", "eq1", "--Nv", "4000", "--Nb", "10", "--Pb", "200"});
  const auto eq2 = run({"yield", "--mode", "eq2", "--Nv", "4000", "--Nb", "10", "--Na", "125", "--Pa", "1.6"});
  EXPECT_EQ(eq1.out.substr(eq1.out.find("yield")), eq2.out.substr(eq2.out.find("yield")));
  const auto pano = run({"yield", "--mode", "panoramic", "--berries", "18865", "--variety", "Pinot Gris",
                         "--year", "2018"});
  EXPECT_NE(pano.out.find("30184.00 g"), std::string::npos) << pano.out;
}

TEST(Cli, YieldUnknownKeysListed) {
  const auto r = run({"yield", "--mode", "eq2", "--Na", "100", "--variety", "Merlot", "--year", "2018",
                      "--Nv", "1", "--Nb", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Lagrein"), std::string::npos);
  EXPECT_EQ(run({"yield", "--mode", "eq1", "--Nv", "1"}).code, 1);
  EXPECT_EQ(run({"yield"}).code, 1);
}

TEST(Cli, YieldListsTables) {
  const auto r = run({"yield", "--list-tables"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Marzemino\t2.1\t2.3\t-\t0.05"), std::string::npos) << r.out;
}

TEST(Cli, RenderZeroMapAndMismatch) {
  const auto dir = fixtures::temp_dir("cli_render");
  Image img(32, 24, 3, 90);
  img.at(3, 4, 1) = 200;
  write_pnm(dir / "in.ppm", img);
  dgrd::write_file(dir / "zero.dgrd", DensityMap(24, 32));
  const auto r = run({"render", "--image", (dir / "in.ppm").string(), "--density",
                      (dir / "zero.dgrd").string(), "--output", (dir / "out.ppm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "out.ppm"), slurp(dir / "in.ppm"));
  EXPECT_NE(r.out.find("count = 0.00"), std::string::npos);

  dgrd::write_file(dir / "bad.dgrd", DensityMap(10, 10));
  EXPECT_EQ(run({"render", "--image", (dir / "in.ppm").string(), "--density",
                 (dir / "bad.dgrd").string(), "--output", (dir / "o2.ppm").string()})
                .code,
            1);
}

TEST(Cli, ManifestMatchesGolden) {
  const auto r = run({"manifest", "--kind", "CR2-like"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(fs::path(DENSECOUNT_TEST_DATA_DIR) / "golden" / "training_manifest_cr2.txt"));
  EXPECT_EQ(run({"manifest", "--kind", "CR9"}).code, 1);
}

TEST(Cli, PredictSingleImage) {
  const auto dir = fixtures::temp_dir("cli_predict");
  SplitMix64 rng(3);
  const auto pts = synthetic::separated_points("p", 100, 80, 10, 20.0, 8.0, rng);
  write_pnm(dir / "scene.pgm", synthetic::blob_scene(pts, 3.0));
  const auto r = run({"predict", "--image", (dir / "scene.pgm").string(), "--out-dir",
                      (dir / "pred").string(), "--predictions", (dir / "p.tsv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 11), "scene 10 10");
  EXPECT_TRUE(fs::exists(dir / "pred" / "scene.dgrd"));
  EXPECT_EQ(load_predictions(dir / "p.tsv").size(), 1u);
  EXPECT_EQ(run({"predict"}).code, 1);
}

TEST(Cli, SelftestNeedsSeed) {
  EXPECT_EQ(run({"selftest"}).code, 2);
  const auto r = run({"selftest", "--seed", "3", "--images", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("selftest passed"), std::string::npos);
}

}  // namespace
}  // namespace densecount
