#ifndef DENSECOUNT_SYNTHETIC_HPP
#define DENSECOUNT_SYNTHETIC_HPP

#include <vector>

#include "densecount/annotations.hpp"
#include "densecount/image.hpp"
#include "densecount/rng.hpp"

namespace densecount::synthetic {

/// n points uniform over [0,width) x [0,height).
PointAnnotationSet uniform_points(std::string image_id, int width, int height, std::size_t n,
                                  SplitMix64& rng);

/// Up to n points at least `min_spacing` apart and `margin` from every
/// edge, placed by rejection sampling on a jittered grid. Returns fewer
/// points only if the image cannot hold n.
PointAnnotationSet separated_points(std::string image_id, int width, int height, std::size_t n,
                                    double min_spacing, double margin, SplitMix64& rng);

/// Gray image: light background with a dark Gaussian blob (peak depth
/// `depth` gray levels) at every point.
Image blob_scene(const PointAnnotationSet& points, double blob_sigma, int background = 220,
                 int depth = 160);

/// Gray image with dark filled disks of `radius` at every point.
Image disk_scene(const PointAnnotationSet& points, double radius, int background = 220,
                 int foreground = 60);

}  // namespace densecount::synthetic

#endif  // DENSECOUNT_SYNTHETIC_HPP
