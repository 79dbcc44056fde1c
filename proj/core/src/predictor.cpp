#include "densecount/predictor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "densecount/density.hpp"
#include "densecount/errors.hpp"

namespace densecount {

DensityMap oracle_predict(const DensityMap& ground_truth, double noise_level, SplitMix64& rng) {
  if (!(std::isfinite(noise_level) && noise_level >= 0.0)) {
    throw ConfigError(fmt::format("noise level must be >= 0, got {}", noise_level));
  }
  if (noise_level == 0.0) return ground_truth;
  const double factor = std::max(0.0, 1.0 + noise_level * (2.0 * rng.uniform() - 1.0));
  std::vector<double> values(ground_truth.values().begin(), ground_truth.values().end());
  for (double& v : values) v *= factor;
  return DensityMap(ground_truth.rows(), ground_truth.cols(), std::move(values),
                    ground_truth.scale());
}

std::vector<double> ncc_response(const Image& image, double template_sigma) {
  if (!(std::isfinite(template_sigma) && template_sigma > 0.0)) {
    throw ConfigError(fmt::format("template sigma must be > 0, got {}", template_sigma));
  }
  const Image gray = to_gray(image);
  const int w = gray.width;
  const int h = gray.height;
  const int radius = static_cast<int>(std::ceil(3.0 * template_sigma));
  const int side = 2 * radius + 1;

  // Dark blob: negative Gaussian.
  std::vector<double> tmpl(static_cast<std::size_t>(side) * side);
  const double inv_two_var = 1.0 / (2.0 * template_sigma * template_sigma);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      tmpl[static_cast<std::size_t>((dy + radius) * side + dx + radius)] =
          -std::exp(-(dx * dx + dy * dy) * inv_two_var);
    }
  }

  std::vector<double> response(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h - 1, y + radius);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w - 1, x + radius);
      double n = 0, s_i = 0, s_ii = 0, s_t = 0, s_tt = 0, s_it = 0;
      for (int yy = y0; yy <= y1; ++yy) {
        const double* trow = &tmpl[static_cast<std::size_t>((yy - y + radius) * side + radius - x)];
        for (int xx = x0; xx <= x1; ++xx) {
          const double iv = gray.at(xx, yy);
          const double tv = trow[xx];
          n += 1;
          s_i += iv;
          s_ii += iv * iv;
          s_t += tv;
          s_tt += tv * tv;
          s_it += iv * tv;
        }
      }
      const double var_i = s_ii - s_i * s_i / n;
      const double var_t = s_tt - s_t * s_t / n;
      // Integer pixel data: any non-flat window has variance well above this.
      if (var_i <= 1e-6 || var_t <= 1e-12) continue;
      response[static_cast<std::size_t>(y) * w + x] = (s_it - s_i * s_t / n) / std::sqrt(var_i * var_t);
    }
  }
  return response;
}

BaselineResult baseline_predict(const Image& image, const BaselineOptions& options) {
  if (image.width <= 0 || image.height <= 0 || image.pixels.empty()) {
    throw ConfigError("baseline predictor needs a non-empty image");
  }
  const std::vector<double> response = ncc_response(image, options.template_sigma);
  const int w = image.width;
  const int h = image.height;
  auto at = [&](int x, int y) { return response[static_cast<std::size_t>(y) * w + x]; };

  struct Peak {
    int x, y;
    double score;
  };
  std::vector<Peak> peaks;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = at(x, y);
      if (!(v >= options.detection_threshold) || v <= 0.0) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (at(nx, ny) > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) peaks.push_back({x, y, v});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.score > b.score; });

  BaselineResult result;
  const double r2 = options.template_sigma * options.template_sigma;
  for (const Peak& p : peaks) {
    const Point centre{p.x + 0.5, p.y + 0.5};
    const bool suppressed = std::any_of(result.detections.begin(), result.detections.end(),
                                        [&](const Point& q) {
                                          const double dx = q.x - centre.x;
                                          const double dy = q.y - centre.y;
                                          return dx * dx + dy * dy <= r2;
                                        });
    if (suppressed) continue;
    result.detections.push_back(centre);
    result.scores.push_back(p.score);
  }

  PointAnnotationSet found;
  found.width = w;
  found.height = h;
  found.points = result.detections;
  result.density = generate_density_map(found, KernelSpec::fixed(options.template_sigma));
  return result;
}

std::string_view to_string(DatasetKind kind) {
  return kind == DatasetKind::Cr1Like ? "CR1-like" : "CR2-like";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cr1-like" || lower == "cr1") return DatasetKind::Cr1Like;
  if (lower == "cr2-like" || lower == "cr2") return DatasetKind::Cr2Like;
  throw ConfigError(fmt::format("unknown dataset kind '{}'; expected CR1-like or CR2-like", text));
}

TrainingManifest emit_training_manifest(DatasetKind kind) {
  TrainingManifest m;
  m.dataset_kind = kind;
  // Close-up single-bunch images train with smaller steps and larger batches
  // than the panoramic ones, whose patches are bigger.
  if (kind == DatasetKind::Cr1Like) {
    m.initial_learning_rate = 1e-5;
    m.batch_size = 20;
  } else {
    m.initial_learning_rate = 1e-4;
    m.batch_size = 4;
  }
  return m;
}

std::string format_training_manifest(const TrainingManifest& m) {
  auto triple = [](const std::array<double, 3>& v) {
    return fmt::format("{}, {}, {}", v[0], v[1], v[2]);
  };
  std::string out = "# density-network training manifest\n";
  out += fmt::format("dataset_kind = {}\n", to_string(m.dataset_kind));
  out += fmt::format("optimizer = {}\n", m.optimizer);
  out += fmt::format("initial_learning_rate = {:.0e}\n", m.initial_learning_rate);
  out += fmt::format("lr_schedule = multiply by {:g} every {} epochs\n", m.lr_decay_factor,
                     m.lr_decay_every_epochs);
  out += fmt::format("frozen_layers = {}\n", m.frozen_layers);
  out += fmt::format("batch_size = {}\n", m.batch_size);
  out += fmt::format("max_epochs = {}\n", m.max_epochs);
  out += fmt::format("weights_used = {}\n", m.weights_used);
  out += fmt::format("resize_height = {}\n", m.resize_height);
  out += fmt::format("normalization_policy = {}\n", m.normalization_policy);
  out += fmt::format("normalization_mean = {}\n", triple(m.normalization_mean));
  out += fmt::format("normalization_std = {}\n", triple(m.normalization_std));
  out += fmt::format("patch_policy = {}\n", m.patch_policy);
  out += fmt::format("augmentation_policy = {}\n", m.augmentation_policy);
  return out;
}

}  // namespace densecount
