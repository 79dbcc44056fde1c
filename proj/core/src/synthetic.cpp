#include "densecount/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount::synthetic {

PointAnnotationSet uniform_points(std::string image_id, int width, int height, std::size_t n,
                                  SplitMix64& rng) {
  PointAnnotationSet set;
  set.image_id = std::move(image_id);
  set.width = width;
  set.height = height;
  set.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    set.points.push_back({rng.uniform() * width, rng.uniform() * height});
  }
  return set;
}

PointAnnotationSet separated_points(std::string image_id, int width, int height, std::size_t n,
                                    double min_spacing, double margin, SplitMix64& rng) {
  if (width <= 2 * margin || height <= 2 * margin) {
    throw ConfigError(fmt::format("margin {} leaves no room in {}x{}", margin, width, height));
  }
  PointAnnotationSet set;
  set.image_id = std::move(image_id);
  set.width = width;
  set.height = height;
  const double spacing2 = min_spacing * min_spacing;
  const std::size_t max_attempts = 2000 * std::max<std::size_t>(n, 1);
  for (std::size_t attempt = 0; attempt < max_attempts && set.points.size() < n; ++attempt) {
    const Point p{margin + rng.uniform() * (width - 2 * margin),
                  margin + rng.uniform() * (height - 2 * margin)};
    const bool clear = std::none_of(set.points.begin(), set.points.end(), [&](const Point& q) {
      return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) < spacing2;
    });
    if (clear) set.points.push_back(p);
  }
  return set;
}

Image blob_scene(const PointAnnotationSet& points, double blob_sigma, int background, int depth) {
  std::vector<double> darkness(static_cast<std::size_t>(points.width) * points.height, 0.0);
  const int radius = static_cast<int>(std::ceil(4.0 * blob_sigma));
  const double inv_two_var = 1.0 / (2.0 * blob_sigma * blob_sigma);
  for (const Point& p : points.points) {
    const int cx = static_cast<int>(p.x);
    const int cy = static_cast<int>(p.y);
    for (int y = std::max(0, cy - radius); y <= std::min(points.height - 1, cy + radius); ++y) {
      for (int x = std::max(0, cx - radius); x <= std::min(points.width - 1, cx + radius); ++x) {
        const double dx = x + 0.5 - p.x;
        const double dy = y + 0.5 - p.y;
        darkness[static_cast<std::size_t>(y) * points.width + x] +=
            std::exp(-(dx * dx + dy * dy) * inv_two_var);
      }
    }
  }
  Image image(points.width, points.height, 1);
  for (std::size_t i = 0; i < darkness.size(); ++i) {
    const double v = background - depth * darkness[i];
    image.pixels[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  }
  return image;
}

Image disk_scene(const PointAnnotationSet& points, double radius, int background, int foreground) {
  Image image(points.width, points.height, 1, static_cast<std::uint8_t>(background));
  const double r2 = radius * radius;
  for (const Point& p : points.points) {
    const int r = static_cast<int>(std::ceil(radius)) + 1;
    const int cx = static_cast<int>(p.x);
    const int cy = static_cast<int>(p.y);
    for (int y = std::max(0, cy - r); y <= std::min(points.height - 1, cy + r); ++y) {
      for (int x = std::max(0, cx - r); x <= std::min(points.width - 1, cx + r); ++x) {
        const double dx = x + 0.5 - p.x;
        const double dy = y + 0.5 - p.y;
        if (dx * dx + dy * dy <= r2) image.at(x, y) = static_cast<std::uint8_t>(foreground);
      }
    }
  }
  return image;
}

}  // namespace densecount::synthetic
