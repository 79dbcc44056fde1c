#include "densecount/transforms.hpp"

#include <cmath>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {
namespace {

// Largest double strictly below `bound` when v has reached it.
double clamp_below(double v, int bound) {
  const auto b = static_cast<double>(bound);
  if (v >= b) return std::nextafter(b, 0.0);
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

PointAnnotationSet resize_to_height(const PointAnnotationSet& annotations, int target_height) {
  if (target_height <= 0) {
    throw ConfigError(fmt::format("target height must be positive, got {}", target_height));
  }
  if (annotations.width <= 0 || annotations.height <= 0) {
    throw ConfigError(fmt::format("image '{}' has no size", annotations.image_id));
  }
  const double ratio = static_cast<double>(target_height) / annotations.height;
  const auto new_width =
      static_cast<int>(std::max<long long>(1, std::llround(annotations.width * ratio)));
  const double sx = static_cast<double>(new_width) / annotations.width;
  const double sy = ratio;

  PointAnnotationSet out;
  out.image_id = annotations.image_id;
  out.width = new_width;
  out.height = target_height;
  out.points.reserve(annotations.points.size());
  for (const Point& p : annotations.points) {
    out.points.push_back({clamp_below(p.x * sx, new_width), clamp_below(p.y * sy, target_height)});
  }
  return out;
}

std::pair<ImageRecord, PointAnnotationSet> resize_to_height(
    const ImageRecord& record, const PointAnnotationSet& annotations, int target_height) {
  if (record.width != annotations.width || record.height != annotations.height) {
    throw ConfigError(fmt::format("record '{}' is {}x{} but annotations are {}x{}",
                                  record.image_id, record.width, record.height,
                                  annotations.width, annotations.height));
  }
  PointAnnotationSet resized = resize_to_height(annotations, target_height);
  ImageRecord out = record;
  out.width = resized.width;
  out.height = resized.height;
  return {std::move(out), std::move(resized)};
}

Rect random_patch(int width, int height, SplitMix64& rng) {
  if (width < 2 || height < 2) {
    throw ConfigError(fmt::format("patch sampling needs at least a 2x2 image, got {}x{}", width,
                                  height));
  }
  Rect rect;
  rect.width = (width + 1) / 2;
  rect.height = (height + 1) / 2;
  rect.x = static_cast<int>(rng.below(static_cast<std::uint64_t>(width - rect.width + 1)));
  rect.y = static_cast<int>(rng.below(static_cast<std::uint64_t>(height - rect.height + 1)));
  return rect;
}

Rect random_patch(const ImageRecord& record, SplitMix64& rng) {
  return random_patch(record.width, record.height, rng);
}

DensityMap crop_density(const DensityMap& map, const Rect& rect) {
  const bool inside = rect.x >= 0 && rect.y >= 0 && rect.width > 0 && rect.height > 0 &&
                      static_cast<std::size_t>(rect.x) + rect.width <= map.cols() &&
                      static_cast<std::size_t>(rect.y) + rect.height <= map.rows();
  if (!inside) {
    throw OutOfBounds(fmt::format("crop {}x{}+{}+{} outside {}x{} map", rect.width, rect.height,
                                  rect.x, rect.y, map.cols(), map.rows()));
  }
  DensityMap out(static_cast<std::size_t>(rect.height), static_cast<std::size_t>(rect.width),
                 map.scale());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out(r, c) = map(r + static_cast<std::size_t>(rect.y), c + static_cast<std::size_t>(rect.x));
    }
  }
  return out;
}

DensityMap hflip(const DensityMap& map) {
  DensityMap out(map.rows(), map.cols(), map.scale());
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      out(r, map.cols() - 1 - c) = map(r, c);
    }
  }
  return out;
}

PointAnnotationSet hflip(const PointAnnotationSet& annotations) {
  PointAnnotationSet out = annotations;
  for (Point& p : out.points) p.x = clamp_below(annotations.width - p.x, annotations.width);
  return out;
}

FoldAssignment kfold_split(const DatasetManifest& manifest, int fold_count, std::uint64_t seed) {
  const std::size_t n = manifest.records.size();
  if (fold_count < 2) {
    throw ConfigError(fmt::format("fold count must be >= 2, got {}", fold_count));
  }
  if (static_cast<std::size_t>(fold_count) > n) {
    throw ConfigError(fmt::format("cannot split {} images into {} folds", n, fold_count));
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& r : manifest.records) ids.push_back(r.image_id);
  std::sort(ids.begin(), ids.end());

  SplitMix64 rng(seed);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(ids[i], ids[j]);
  }

  FoldAssignment assignment;
  for (std::size_t i = 0; i < n; ++i) {
    if (!assignment.emplace(ids[i], static_cast<int>(i % static_cast<std::size_t>(fold_count))).second) {
      throw ConfigError(fmt::format("duplicate image id '{}'", ids[i]));
    }
  }
  return assignment;
}

DatasetManifest with_folds(const DatasetManifest& manifest, int fold_count, std::uint64_t seed) {
  DatasetManifest out = manifest;
  out.fold_assignment = kfold_split(manifest, fold_count, seed);
  out.fold_count = fold_count;
  out.seed = seed;
  return out;
}

}  // namespace densecount
