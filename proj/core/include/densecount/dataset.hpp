#ifndef DENSECOUNT_DATASET_HPP
#define DENSECOUNT_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "densecount/annotations.hpp"

namespace densecount {

struct ImageRecord {
  std::string image_id;
  std::string file_path;
  std::string variety;
  int width = 0;
  int height = 0;
  std::int64_t annotation_count = 0;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

/// image_id -> fold index in [0, fold_count).
using FoldAssignment = std::map<std::string, int>;

/// One annotated image as stored in an annotation file.
struct AnnotatedImage {
  PointAnnotationSet annotations;
  std::string variety;
};

/// A dataset: image records, split configuration and, when the manifest
/// references an annotation file, the point annotations keyed by image_id.
struct DatasetManifest {
  std::string name = "custom";
  std::vector<ImageRecord> records;
  std::uint64_t seed = 0;
  int fold_count = 0;
  FoldAssignment fold_assignment;
  std::string annotations_path;
  std::map<std::string, PointAnnotationSet> annotations;

  const ImageRecord* find(std::string_view image_id) const;
};

// Annotation files. One record per image, records separated by blank lines:
//
//   image_id<TAB>width<TAB>height[<TAB>variety]
//   x<TAB>y
//   ...
//
// '#' starts a comment line. Points must lie in [0,width) x [0,height).

std::vector<AnnotatedImage> parse_annotations(std::string_view text,
                                              std::string_view source = "<annotations>");
std::vector<AnnotatedImage> load_annotations(const std::filesystem::path& path);
std::string format_annotations(const std::vector<AnnotatedImage>& images);

// Manifest files. `key = value` header lines, then a `[records]` line and one
// tab-separated row per image:
//
//   name = CR1-like
//   seed = 42
//   fold_count = 5
//   annotations = cr1.ann     (optional, relative to the manifest)
//   [records]
//   image_id  file_path  variety  width  height  annotation_count  [fold]
//
// The fold column is present on every row or on none.

DatasetManifest parse_manifest(std::string_view text,
                               std::string_view source = "<manifest>",
                               const std::filesystem::path& base_dir = {});

/// Parses and validates a manifest file. If it references an annotation
/// file, that file is loaded and cross-checked: every record must have
/// annotations with matching size and count, and every point must be
/// inside its image (ValidationError listing offenders otherwise).
DatasetManifest load_manifest(const std::filesystem::path& path);

std::string format_manifest(const DatasetManifest& manifest);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

/// Per-group annotation statistics.
struct CountStats {
  std::size_t images = 0;
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::int64_t total = 0;
  double mean = 0.0;
};

struct DatasetStats {
  std::map<std::string, CountStats> by_variety;
  CountStats total;
};

DatasetStats dataset_stats(const DatasetManifest& manifest);

/// Text table: Variety, Images, Min, Max, Mean (2 decimals), Total.
std::string format_stats(const DatasetStats& stats);

}  // namespace densecount

#endif  // DENSECOUNT_DATASET_HPP
