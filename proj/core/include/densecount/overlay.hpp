#ifndef DENSECOUNT_OVERLAY_HPP
#define DENSECOUNT_OVERLAY_HPP

#include "densecount/density_map.hpp"
#include "densecount/image.hpp"

namespace densecount {

struct OverlayOptions {
  /// Opacity of the heat colour at the densest cell.
  double max_alpha = 0.6;
};

/// Heat-mapped density blended over `base` (returned as RGB). Pixel (x, y)
/// reads cell (floor(y * scale), floor(x * scale)); cell opacity grows
/// linearly with density up to max_alpha. A zero map leaves the pixels
/// unchanged. Throws ConfigError when the map does not cover the image at
/// its declared scale (more than one cell off in either dimension).
Image render_overlay(const Image& base, const DensityMap& map, const OverlayOptions& options = {});

}  // namespace densecount

#endif  // DENSECOUNT_OVERLAY_HPP
