#ifndef DENSECOUNT_PREDICTOR_HPP
#define DENSECOUNT_PREDICTOR_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "densecount/annotations.hpp"
#include "densecount/density_map.hpp"
#include "densecount/image.hpp"
#include "densecount/rng.hpp"

namespace densecount {

// Predictors produce a density map per image; the count is its integral.
// Learned predictors run elsewhere and hand their maps over as DGRD files.

/// Ground truth scaled by one factor drawn uniformly from
/// [1 - noise_level, 1 + noise_level]. Identity at noise 0 (no draw is made).
/// Throws ConfigError for negative or non-finite noise.
DensityMap oracle_predict(const DensityMap& ground_truth, double noise_level, SplitMix64& rng);

struct BaselineOptions {
  /// Sigma of the dark Gaussian blob template, in pixels. Also the
  /// non-maximum-suppression radius and the sigma of the emitted kernels.
  double template_sigma = 3.0;
  /// Minimum normalised cross-correlation for a peak to count.
  double detection_threshold = 0.5;
};

struct BaselineResult {
  std::vector<Point> detections;
  std::vector<double> scores;
  DensityMap density;
};

/// Classical blob counter: normalised cross-correlation against a dark
/// Gaussian template, local maxima above threshold, greedy non-maximum
/// suppression, then one unit-mass kernel per surviving peak. Deterministic.
/// A flat image yields no detections.
BaselineResult baseline_predict(const Image& image, const BaselineOptions& options = {});

/// Normalised cross-correlation response per pixel (row-major), exposed for
/// inspection and testing. Windows are clipped at the image border.
std::vector<double> ncc_response(const Image& gray, double template_sigma);

enum class DatasetKind { Cr1Like, Cr2Like };

std::string_view to_string(DatasetKind kind);
/// Accepts "CR1-like" / "CR2-like" (case-insensitive); throws ConfigError.
DatasetKind parse_dataset_kind(std::string_view text);

/// Training recipe handed to an external density-network trainer.
struct TrainingManifest {
  DatasetKind dataset_kind = DatasetKind::Cr1Like;
  std::string optimizer = "Adam";
  double initial_learning_rate = 1e-5;
  double lr_decay_factor = 0.1;
  int lr_decay_every_epochs = 50;
  std::string frozen_layers = "first ten VGG-16 layers";
  int batch_size = 20;
  int max_epochs = 200;
  int resize_height = 800;
  std::string normalization_policy = "per-channel (VGG-16 / ImageNet)";
  std::array<double, 3> normalization_mean{0.485, 0.456, 0.406};
  std::array<double, 3> normalization_std{0.229, 0.224, 0.225};
  std::string patch_policy = "random crop, ceil(w/2) x ceil(h/2) (quarter area), in-bounds";
  std::string augmentation_policy = "horizontal flip, p = 0.5";
  std::string weights_used = "last epoch";
};

TrainingManifest emit_training_manifest(DatasetKind kind);

/// `key = value` text, one field per line, in declaration order.
std::string format_training_manifest(const TrainingManifest& manifest);

}  // namespace densecount

#endif  // DENSECOUNT_PREDICTOR_HPP
