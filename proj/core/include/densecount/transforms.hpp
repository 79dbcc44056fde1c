#ifndef DENSECOUNT_TRANSFORMS_HPP
#define DENSECOUNT_TRANSFORMS_HPP

#include <cstdint>
#include <utility>

#include "densecount/annotations.hpp"
#include "densecount/dataset.hpp"
#include "densecount/density_map.hpp"
#include "densecount/rng.hpp"

namespace densecount {

inline constexpr int kDefaultTargetHeight = 800;

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Rescales an image to `target_height`, keeping aspect ratio:
/// new width = round(width * target_height / height), at least 1. Points are
/// scaled by new_width/width and target_height/height and clamped into the
/// new half-open bounds. The record's dimensions are updated as well.
std::pair<ImageRecord, PointAnnotationSet> resize_to_height(
    const ImageRecord& record, const PointAnnotationSet& annotations,
    int target_height = kDefaultTargetHeight);

/// Annotation-only overload.
PointAnnotationSet resize_to_height(const PointAnnotationSet& annotations,
                                    int target_height = kDefaultTargetHeight);

/// Random training crop covering a quarter of the image area:
/// ceil(w/2) x ceil(h/2), top-left uniform over all in-bounds placements.
struct PatchSpec {
  std::uint64_t rng_seed = 0;

  SplitMix64 make_rng() const { return SplitMix64(rng_seed); }
};

/// Draws one patch for a width x height image, advancing `rng`. Throws
/// ConfigError for images smaller than 2x2.
Rect random_patch(int width, int height, SplitMix64& rng);
Rect random_patch(const ImageRecord& record, SplitMix64& rng);

/// Cell-exact sub-grid copy. The result may hold less mass than the number
/// of points inside the rectangle: kernels straddling the edge are cut.
/// Throws OutOfBounds if the rectangle is not inside the map.
DensityMap crop_density(const DensityMap& map, const Rect& rect);

/// Horizontal mirror. Cells map c -> cols-1-c. Points map x -> width-x,
/// pulled just below width when the reflection lands on the edge.
DensityMap hflip(const DensityMap& map);
PointAnnotationSet hflip(const PointAnnotationSet& annotations);

/// Deterministic fold assignment: image ids are sorted lexicographically,
/// shuffled with Fisher-Yates driven by SplitMix64(seed) (for i = n-1..1,
/// j = below(i+1), swap), then dealt round-robin so fold sizes differ by at
/// most one. Throws ConfigError unless 2 <= fold_count <= image count.
FoldAssignment kfold_split(const DatasetManifest& manifest, int fold_count,
                           std::uint64_t seed);

/// Copy of `manifest` carrying the assignment, fold_count and seed.
DatasetManifest with_folds(const DatasetManifest& manifest, int fold_count,
                           std::uint64_t seed);

}  // namespace densecount

#endif  // DENSECOUNT_TRANSFORMS_HPP
