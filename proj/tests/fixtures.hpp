// Shared synthetic fixtures for unit and acceptance tests.
#ifndef DENSECOUNT_TESTS_FIXTURES_HPP
#define DENSECOUNT_TESTS_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "densecount/dataset.hpp"

namespace densecount::fixtures {

struct VarietyShape {
  const char* variety;
  int images;
  int min;
  int max;
  int total;
};

// Per-variety image counts, extremes and totals of the close-up dataset.
inline const std::vector<VarietyShape>& cr1_shape() {
  static const std::vector<VarietyShape> shape = {
      {"Chardonnay", 7, 51, 172, 733},   {"Lagrein", 9, 117, 211, 1469},
      {"Marzemino", 16, 53, 244, 1837},  {"Pinot Gris", 34, 86, 322, 5131},
      {"Pinot Noir", 21, 93, 269, 2982}, {"Sauvignon", 21, 42, 167, 2318},
      {"Traminer", 20, 61, 207, 2536},
  };
  return shape;
}

// Panoramic dataset: 17 images, 543..1789 berries, 18865 total.
inline VarietyShape cr2_shape() { return {"Teroldego", 17, 543, 1789, 18865}; }

/// Counts with the given extremes and total: min, max, then the remainder
/// spread as evenly as possible.
inline std::vector<std::int64_t> counts_for(const VarietyShape& s) {
  std::vector<std::int64_t> counts = {s.min, s.max};
  const int rest = s.images - 2;
  const int remainder = s.total - s.min - s.max;
  for (int i = 0; i < rest; ++i) counts.push_back(remainder / rest + (i < remainder % rest ? 1 : 0));
  return counts;
}

inline DatasetManifest shaped_manifest(const std::vector<VarietyShape>& shape, std::string name,
                                       int width = 600, int height = 800) {
  DatasetManifest m;
  m.name = std::move(name);
  m.seed = 1;
  int index = 0;
  for (const auto& s : shape) {
    for (auto count : counts_for(s)) {
      ImageRecord r;
      r.image_id = fmt::format("img{:04}", index++);
      r.file_path = r.image_id + ".ppm";
      r.variety = s.variety;
      r.width = width;
      r.height = height;
      r.annotation_count = count;
      m.records.push_back(r);
    }
  }
  return m;
}

inline DatasetManifest random_manifest(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  DatasetManifest m;
  for (std::size_t i = 0; i < n; ++i) {
    ImageRecord r;
    r.image_id = fmt::format("r{}_{:x}", i, gen() % 0xffffff);
    r.file_path = r.image_id + ".pgm";
    r.variety = "v";
    r.width = 100;
    r.height = 100;
    r.annotation_count = static_cast<std::int64_t>(gen() % 300);
    m.records.push_back(r);
  }
  return m;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("densecount_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace densecount::fixtures

#endif  // DENSECOUNT_TESTS_FIXTURES_HPP
