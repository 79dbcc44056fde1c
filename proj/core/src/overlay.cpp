#include "densecount/overlay.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {
namespace {

// Piecewise-linear "jet" colour map over t in [0, 1].
std::array<double, 3> jet(double t) {
  auto channel = [t](double centre) {
    return std::clamp(1.5 - std::abs(4.0 * t - centre), 0.0, 1.0) * 255.0;
  };
  return {channel(3.0), channel(2.0), channel(1.0)};
}

bool covers(std::size_t cells, int pixels, double scale) {
  return std::abs(static_cast<double>(cells) - pixels * scale) < 1.0;
}

}  // namespace

Image render_overlay(const Image& base, const DensityMap& map, const OverlayOptions& options) {
  if (!covers(map.rows(), base.height, map.scale()) || !covers(map.cols(), base.width, map.scale())) {
    throw ConfigError(fmt::format("{}x{} density map at scale {} does not match {}x{} image",
                                  map.cols(), map.rows(), map.scale(), base.width, base.height));
  }
  Image out = to_rgb(base);
  double peak = 0.0;
  for (double v : map.values()) peak = std::max(peak, v);
  if (peak <= 0.0) return out;

  for (int y = 0; y < out.height; ++y) {
    const auto r = std::min(map.rows() - 1, static_cast<std::size_t>(y * map.scale()));
    for (int x = 0; x < out.width; ++x) {
      const auto c = std::min(map.cols() - 1, static_cast<std::size_t>(x * map.scale()));
      const double t = map(r, c) / peak;
      if (t <= 0.0) continue;
      const double alpha = options.max_alpha * t;
      const auto colour = jet(t);
      for (int ch = 0; ch < 3; ++ch) {
        const double blended = (1.0 - alpha) * out.at(x, y, ch) + alpha * colour[static_cast<std::size_t>(ch)];
        out.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(blended), 0L, 255L));
      }
    }
  }
  return out;
}

}  // namespace densecount
