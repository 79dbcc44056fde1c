#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "densecount/dataset.hpp"
#include "densecount/density.hpp"
#include "densecount/dgrd.hpp"
#include "densecount/errors.hpp"
#include "densecount/image.hpp"
#include "densecount/metrics.hpp"
#include "densecount/overlay.hpp"
#include "densecount/parallel.hpp"
#include "densecount/predictor.hpp"
#include "densecount/report_io.hpp"
#include "densecount/synthetic.hpp"
#include "densecount/transforms.hpp"
#include "densecount/yield.hpp"

namespace densecount::cli {
namespace fs = std::filesystem;

namespace {

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

// ---------------------------------------------------------------- densify

struct DensifyOptions {
  std::string annotations;
  std::string out_dir;
  bool adaptive = false;
  std::optional<double> sigma;
  int k = 3;
  double beta = 0.3;
  double fallback = 15.0;
  double truncation = 4.0;
  int resize_height = 0;
};

int cmd_densify(const DensifyOptions& o, std::ostream& out, std::ostream& err) {
  KernelSpec spec = o.sigma ? KernelSpec::fixed(*o.sigma, o.truncation)
                            : KernelSpec::adaptive(o.k, o.beta, o.fallback, o.truncation);
  spec.validate();
  if (o.resize_height < 0) throw ConfigError("--resize-height must be >= 0");

  std::vector<AnnotatedImage> images = load_annotations(o.annotations);
  std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) {
    return a.annotations.image_id < b.annotations.image_id;
  });
  fs::create_directories(o.out_dir);

  struct Outcome {
    double sum = 0.0;
    std::string error;
  };
  std::vector<Outcome> outcomes(images.size());
  parallel_for(images.size(), [&](std::size_t i) {
    const auto& ann = images[i].annotations;
    try {
      const PointAnnotationSet input =
          o.resize_height > 0 ? resize_to_height(ann, o.resize_height) : ann;
      const DensityMap stored = dgrd::quantize(generate_density_map(input, spec));
      dgrd::write_file(fs::path(o.out_dir) / (ann.image_id + ".dgrd"), stored);
      outcomes[i].sum = integrate(stored);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  int status = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& ann = images[i].annotations;
    if (!outcomes[i].error.empty()) {
      fmt::print(err, "densify: {}: {}\n", ann.image_id, outcomes[i].error);
      status = 1;
      continue;
    }
    fmt::print(out, "{} {} {:.6f}\n", ann.image_id, ann.count(), outcomes[i].sum);
  }
  return status;
}

// ------------------------------------------------------------------ split

struct SplitOptions {
  std::string manifest;
  int folds = 5;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_split(const SplitOptions& o, std::ostream& out, std::ostream&) {
  const DatasetManifest manifest = load_manifest(o.manifest);
  const DatasetManifest split = with_folds(manifest, o.folds, o.seed);
  save_manifest(o.output, split);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(o.folds), 0);
  for (const auto& [id, fold] : split.fold_assignment) ++sizes[static_cast<std::size_t>(fold)];
  for (std::size_t f = 0; f < sizes.size(); ++f) fmt::print(out, "fold {}: {} images\n", f, sizes[f]);
  return 0;
}

// ------------------------------------------------------------------ stats

int cmd_stats(const std::string& manifest_path, std::ostream& out, std::ostream&) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  fmt::print(out, "{}", format_stats(dataset_stats(manifest)));
  return 0;
}

// --------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string predictions;
  std::string manifest;
  std::string gt_dir;
  std::string group_by = "none";
  std::string output_json;
  std::string output_table;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.manifest.empty() && o.gt_dir.empty()) {
    throw ConfigError("evaluate needs --manifest or --gt-dir for ground truth");
  }
  if (o.group_by != "none" && o.manifest.empty()) {
    throw ConfigError("--group-by needs --manifest for variety and fold labels");
  }
  const auto predictions = load_predictions(o.predictions);
  std::optional<DatasetManifest> manifest;
  if (!o.manifest.empty()) manifest = load_manifest(o.manifest);

  std::vector<CountPair> pairs;
  std::vector<std::string> missing;
  for (const auto& [id, predicted] : predictions) {
    CountPair pair{id, predicted, 0.0, std::nullopt, std::nullopt};
    const ImageRecord* record = manifest ? manifest->find(id) : nullptr;
    if (!o.gt_dir.empty()) {
      const fs::path gt_path = fs::path(o.gt_dir) / (id + ".dgrd");
      if (!fs::exists(gt_path)) {
        missing.push_back(id);
        continue;
      }
      pair.ground_truth = integrate(dgrd::read_file(gt_path));
    } else if (record != nullptr) {
      pair.ground_truth = static_cast<double>(record->annotation_count);
    } else {
      missing.push_back(id);
      continue;
    }
    if (manifest) {
      if (record == nullptr) {
        missing.push_back(id);
        continue;
      }
      pair.group = record->variety;
      if (const auto it = manifest->fold_assignment.find(id); it != manifest->fold_assignment.end()) {
        pair.fold = it->second;
      }
    }
    pairs.push_back(std::move(pair));
  }
  if (!missing.empty()) {
    for (const auto& id : missing) fmt::print(err, "evaluate: no ground truth for '{}'\n", id);
    return 1;
  }
  if (pairs.empty()) throw EmptyInput("no predictions to evaluate");

  MetricsReport report;
  if (o.group_by == "none") {
    report = make_report(pairs);
  } else if (o.group_by == "variety") {
    report = grouped_report(pairs, GroupBy::Variety);
  } else {
    report = grouped_report(pairs, GroupBy::Fold);
    if (report.groups.size() >= 2) {
      std::vector<MetricsReport> folds;
      for (const auto& g : report.groups) folds.push_back(g.report);
      report.cross_fold = cv_aggregate(folds);
    }
  }

  const std::string table = format_report(report);
  fmt::print(out, "{}", table);
  if (!o.output_json.empty()) write_text_file(o.output_json, report_to_json(report));
  if (!o.output_table.empty()) write_text_file(o.output_table, table);
  return 0;
}

// ------------------------------------------------------------------ yield

struct YieldOptions {
  std::string mode;
  std::optional<double> nv, nb, pb, na, pa, berries;
  std::string variety;
  std::optional<int> year;
  bool list_tables = false;
};

int cmd_yield(const YieldOptions& o, std::ostream& out, std::ostream&) {
  const BundledTables& tables = bundled_tables();
  if (o.list_tables) {
    auto dump = [&](std::string_view title, const SeriesTable& t) {
      fmt::print(out, "# {}\n", title);
      std::istringstream rows(format_series_table(t));
      std::string line;
      std::getline(rows, line);
      fmt::print(out, "{}\t% mean dev.\n", line);
      for (const auto& series : t.rows) {
        std::getline(rows, line);
        fmt::print(out, "{}\t{:.2f}\n", line, pct_mean_deviation(series));
      }
    };
    dump("average cluster weight (g)", tables.cluster_weights);
    dump("average berry weight (g)", tables.berry_weights);
    return 0;
  }

  auto require = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(fmt::format("--mode {} requires {}", o.mode, flag));
    return *v;
  };
  // Weight from the flag, or from the bundled table for --variety/--year.
  std::string provenance;
  auto weight = [&](const std::optional<double>& flag_value, const char* flag,
                    const SeriesTable& table, const char* table_name) {
    if (flag_value) return *flag_value;
    if (o.variety.empty() || !o.year) {
      throw ConfigError(fmt::format("--mode {} requires {} or --variety with --year", o.mode, flag));
    }
    const double v = table.lookup(o.variety, *o.year);
    provenance = fmt::format(" ({} table: {} {})", table_name, table.find(o.variety)->variety, *o.year);
    return v;
  };

  double grams = 0.0;
  fmt::print(out, "mode: {}\n", o.mode);
  if (o.mode == "eq1") {
    const double nv = require(o.nv, "--Nv");
    const double nb = require(o.nb, "--Nb");
    const double pb = weight(o.pb, "--Pb", tables.cluster_weights, "cluster weight");
    fmt::print(out, "N_v = {}\nN_b = {}\nP_b = {} g{}\n", nv, nb, pb, provenance);
    grams = yield_from_bunch_weight(nv, nb, pb);
  } else if (o.mode == "eq2") {
    const double nv = require(o.nv, "--Nv");
    const double nb = require(o.nb, "--Nb");
    const double na = require(o.na, "--Na");
    const double pa = weight(o.pa, "--Pa", tables.berry_weights, "berry weight");
    fmt::print(out, "N_v = {}\nN_b = {}\nN_a = {}\nP_a = {} g{}\n", nv, nb, na, pa, provenance);
    grams = yield_from_berry_count(nv, nb, na, pa);
  } else {
    const double berries = require(o.berries, "--berries");
    const double pa = weight(o.pa, "--Pa", tables.berry_weights, "berry weight");
    fmt::print(out, "berries = {}\nP_a = {} g{}\n", berries, pa, provenance);
    grams = yield_panoramic(berries, pa);
  }
  fmt::print(out, "yield = {:.2f} g = {:.4f} kg = {:.6f} q\n", grams, grams / 1e3, grams / 1e5);
  return 0;
}

// ----------------------------------------------------------------- render

struct RenderOptions {
  std::string image;
  std::string density;
  std::string output;
  double alpha = 0.6;
};

int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream&) {
  const Image base = read_pnm(o.image);
  const DensityMap map = dgrd::read_file(o.density);
  write_pnm(o.output, render_overlay(base, map, OverlayOptions{o.alpha}));
  fmt::print(out, "{}: count = {:.2f}\n", fs::path(o.density).stem().string(), integrate(map));
  return 0;
}

// --------------------------------------------------------------- manifest

int cmd_manifest(const std::string& kind, const std::string& output, std::ostream& out,
                 std::ostream&) {
  const std::string text = format_training_manifest(emit_training_manifest(parse_dataset_kind(kind)));
  if (output.empty()) {
    fmt::print(out, "{}", text);
  } else {
    write_text_file(output, text);
  }
  return 0;
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  std::string manifest;
  std::string image;
  std::string id;
  std::string out_dir;
  std::string predictions;
  double template_sigma = 3.0;
  double threshold = 0.5;
};

int cmd_predict(const PredictOptions& o, std::ostream& out, std::ostream& err) {
  struct Job {
    std::string id;
    fs::path image;
  };
  std::vector<Job> jobs;
  if (!o.manifest.empty()) {
    const DatasetManifest manifest = load_manifest(o.manifest);
    const fs::path base = fs::path(o.manifest).parent_path();
    for (const auto& r : manifest.records) {
      fs::path p(r.file_path);
      jobs.push_back({r.image_id, p.is_relative() ? base / p : p});
    }
  } else {
    jobs.push_back({o.id.empty() ? fs::path(o.image).stem().string() : o.id, o.image});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
  if (!o.out_dir.empty()) fs::create_directories(o.out_dir);

  const BaselineOptions options{o.template_sigma, o.threshold};
  struct Outcome {
    double count = 0.0;
    std::size_t detections = 0;
    std::string error;
  };
  std::vector<Outcome> outcomes(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    try {
      const BaselineResult result = baseline_predict(read_pnm(jobs[i].image), options);
      const DensityMap stored = dgrd::quantize(result.density);
      if (!o.out_dir.empty()) dgrd::write_file(fs::path(o.out_dir) / (jobs[i].id + ".dgrd"), stored);
      outcomes[i].count = integrate(stored);
      outcomes[i].detections = result.detections.size();
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  int status = 0;
  std::map<std::string, double> counts;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      fmt::print(err, "predict: {}: {}\n", jobs[i].id, outcomes[i].error);
      status = 1;
      continue;
    }
    counts[jobs[i].id] = outcomes[i].count;
    fmt::print(out, "{} {} {:.6f}\n", jobs[i].id, outcomes[i].detections, outcomes[i].count);
  }
  if (!o.predictions.empty()) write_text_file(o.predictions, format_predictions(counts));
  return status;
}

// --------------------------------------------------------------- selftest

struct SelftestOptions {
  std::uint64_t seed = 0;
  int images = 100;
  double noise = 0.1;
  std::string out_dir;
};

int cmd_selftest(const SelftestOptions& o, std::ostream& out, std::ostream& err) {
  if (o.images < 1) throw ConfigError("--images must be >= 1");
  SplitMix64 rng(o.seed);
  const KernelSpec spec = KernelSpec::adaptive();

  std::vector<DensityMap> truth(static_cast<std::size_t>(o.images));
  std::vector<std::size_t> counts(truth.size());
  std::vector<SplitMix64> streams;
  for (std::size_t i = 0; i < truth.size(); ++i) streams.push_back(rng.split());
  parallel_for(truth.size(), [&](std::size_t i) {
    SplitMix64 local = streams[i];
    const std::size_t n = 40 + local.below(260);
    const auto points = synthetic::uniform_points(fmt::format("synthetic_{:04}", i), 160, 120, n, local);
    truth[i] = generate_density_map(points, spec);
    counts[i] = n;
  });

  int status = 0;
  auto evaluate = [&](double noise) {
    SplitMix64 noise_rng = rng.split();
    std::vector<CountPair> pairs;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const DensityMap predicted = oracle_predict(truth[i], noise, noise_rng);
      if (!o.out_dir.empty() && noise == o.noise) {
        fs::create_directories(o.out_dir);
        dgrd::write_file(fs::path(o.out_dir) / fmt::format("synthetic_{:04}.dgrd", i), predicted);
      }
      pairs.push_back({fmt::format("synthetic_{:04}", i), integrate(predicted),
                       integrate(truth[i]), std::nullopt, std::nullopt});
    }
    return make_report(pairs);
  };

  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double sum = integrate(truth[i]);
    const double n = static_cast<double>(counts[i]);
    if (std::abs(sum - n) > 1e-6 * n + 1e-9) {
      fmt::print(err, "selftest: image {} sums to {} for {} points\n", i, sum, counts[i]);
      status = 1;
    }
  }

  const MetricsReport exact = evaluate(0.0);
  if (exact.mae != 0.0 || exact.mse != 0.0 || exact.overall_mae != 0.0) {
    fmt::print(err, "selftest: noise-free oracle produced non-zero error\n");
    status = 1;
  }
  fmt::print(out, "{}\n", format_report(exact, "oracle, noise 0"));
  const MetricsReport noisy = evaluate(o.noise);
  fmt::print(out, "{}", format_report(noisy, fmt::format("oracle, noise {}", o.noise)));
  fmt::print(out, "selftest {}\n", status == 0 ? "passed" : "FAILED");
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density-map berry counting, evaluation and yield estimation"};
  app.require_subcommand(1);

  DensifyOptions densify;
  auto* densify_cmd = app.add_subcommand("densify", "Ground-truth density maps from annotations");
  densify_cmd->add_option("--annotations", densify.annotations, "Annotation file")->required();
  densify_cmd->add_option("--out-dir", densify.out_dir, "Directory for <image_id>.dgrd")->required();
  auto* adaptive_flag =
      densify_cmd->add_flag("--adaptive", densify.adaptive, "Geometry-adaptive kernels (default)");
  auto* sigma_opt = densify_cmd->add_option("--sigma", densify.sigma, "Fixed kernel sigma (px)");
  adaptive_flag->excludes(sigma_opt);
  densify_cmd->add_option("--k", densify.k, "Neighbours for adaptive sigma")->capture_default_str();
  densify_cmd->add_option("--beta", densify.beta, "Adaptive sigma multiplier")->capture_default_str();
  densify_cmd->add_option("--fallback", densify.fallback, "Sigma when too few neighbours")
      ->capture_default_str();
  densify_cmd->add_option("--truncation", densify.truncation, "Kernel support in sigmas")
      ->capture_default_str();
  densify_cmd->add_option("--resize-height", densify.resize_height,
                          "Rescale annotations to this height first (0 = off)");

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Assign deterministic cross-validation folds");
  split_cmd->add_option("--manifest", split.manifest, "Input manifest")->required();
  split_cmd->add_option("--folds", split.folds, "Number of folds")->capture_default_str();
  split_cmd->add_option("--seed", split.seed, "Shuffle seed")->required();
  split_cmd->add_option("--output", split.output, "Output manifest")->required();

  std::string stats_manifest;
  auto* stats_cmd = app.add_subcommand("stats", "Per-variety annotation statistics");
  stats_cmd->add_option("--manifest", stats_manifest, "Manifest")->required();

  EvaluateOptions evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Count metrics for a predictions file");
  eval_cmd->add_option("--predictions", evaluate.predictions, "image_id<TAB>count file")->required();
  eval_cmd->add_option("--manifest", evaluate.manifest, "Manifest (counts, varieties, folds)");
  eval_cmd->add_option("--gt-dir", evaluate.gt_dir, "Directory of ground-truth DGRD files");
  eval_cmd->add_option("--group-by", evaluate.group_by, "none, variety or fold")
      ->check(CLI::IsMember({"none", "variety", "fold"}))
      ->capture_default_str();
  eval_cmd->add_option("--output-json", evaluate.output_json, "Write JSON report");
  eval_cmd->add_option("--output-table", evaluate.output_table, "Write text table");

  YieldOptions yield;
  auto* yield_cmd = app.add_subcommand("yield", "Yield from bunch or berry weights");
  yield_cmd->add_option("--mode", yield.mode, "eq1, eq2 or panoramic")
      ->check(CLI::IsMember({"eq1", "eq2", "panoramic"}));
  yield_cmd->add_option("--Nv", yield.nv, "Vines per surface unit");
  yield_cmd->add_option("--Nb", yield.nb, "Bunches per vine");
  yield_cmd->add_option("--Pb", yield.pb, "Average bunch weight (g)");
  yield_cmd->add_option("--Na", yield.na, "Average berries per bunch");
  yield_cmd->add_option("--Pa", yield.pa, "Average berry weight (g)");
  yield_cmd->add_option("--berries", yield.berries, "Total berries (panoramic)");
  yield_cmd->add_option("--variety", yield.variety, "Take the weight from the bundled tables");
  yield_cmd->add_option("--year", yield.year, "Year for the bundled-table lookup");
  yield_cmd->add_flag("--list-tables", yield.list_tables, "Print the bundled weight tables");

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Heat-map overlay of a density map");
  render_cmd->add_option("--image", render.image, "PPM/PGM image")->required();
  render_cmd->add_option("--density", render.density, "DGRD file")->required();
  render_cmd->add_option("--output", render.output, "Output PPM")->required();
  render_cmd->add_option("--alpha", render.alpha, "Peak overlay opacity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  std::string manifest_kind;
  std::string manifest_output;
  auto* manifest_cmd = app.add_subcommand("manifest", "Emit a training manifest");
  manifest_cmd->add_option("--kind", manifest_kind, "CR1-like or CR2-like")->required();
  manifest_cmd->add_option("--output", manifest_output, "Output file (default stdout)");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Baseline blob-counting predictor");
  auto* predict_manifest = predict_cmd->add_option("--manifest", predict.manifest, "Manifest of images");
  auto* predict_image = predict_cmd->add_option("--image", predict.image, "Single PPM/PGM image");
  predict_manifest->excludes(predict_image);
  predict_cmd->add_option("--id", predict.id, "Image id for --image (default: file stem)");
  predict_cmd->add_option("--out-dir", predict.out_dir, "Directory for predicted DGRD files");
  predict_cmd->add_option("--predictions", predict.predictions, "Write image_id<TAB>count file");
  predict_cmd->add_option("--template-sigma", predict.template_sigma, "Blob template sigma (px)")
      ->capture_default_str();
  predict_cmd->add_option("--threshold", predict.threshold, "NCC detection threshold")
      ->capture_default_str();

  SelftestOptions selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "Oracle-predictor round trip on synthetic data");
  selftest_cmd->add_option("--seed", selftest.seed, "Seed")->required();
  selftest_cmd->add_option("--images", selftest.images, "Synthetic images")->capture_default_str();
  selftest_cmd->add_option("--noise", selftest.noise, "Oracle noise level")->capture_default_str();
  selftest_cmd->add_option("--out-dir", selftest.out_dir, "Write noisy oracle DGRD files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse failure is usage.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (densify_cmd->parsed()) return cmd_densify(densify, out, err);
    if (split_cmd->parsed()) return cmd_split(split, out, err);
    if (stats_cmd->parsed()) return cmd_stats(stats_manifest, out, err);
    if (eval_cmd->parsed()) return cmd_evaluate(evaluate, out, err);
    if (yield_cmd->parsed()) {
      if (!yield.list_tables && yield.mode.empty()) throw ConfigError("yield needs --mode");
      return cmd_yield(yield, out, err);
    }
    if (render_cmd->parsed()) return cmd_render(render, out, err);
    if (manifest_cmd->parsed()) return cmd_manifest(manifest_kind, manifest_output, out, err);
    if (predict_cmd->parsed()) {
      if (predict.manifest.empty() && predict.image.empty()) {
        throw ConfigError("predict needs --manifest or --image");
      }
      return cmd_predict(predict, out, err);
    }
    if (selftest_cmd->parsed()) return cmd_selftest(selftest, out, err);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    for (const auto& offender : e.offenders()) fmt::print(err, "  {}\n", offender);
    return 1;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("densecount");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace densecount::cli
