#include "densecount/annotations.hpp"

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {

void PointAnnotationSet::validate() const {
  if (width <= 0 || height <= 0) {
    throw ValidationError(
        fmt::format("image '{}' has non-positive size {}x{}", image_id, width, height), {});
  }
  std::vector<std::string> offenders;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    // Negated comparisons so that NaN coordinates are rejected too.
    if (!(p.x >= 0.0 && p.x < width && p.y >= 0.0 && p.y < height)) {
      offenders.push_back(fmt::format("{}: point #{} ({}, {}) outside {}x{}", image_id, i,
                                      p.x, p.y, width, height));
    }
  }
  if (!offenders.empty()) {
    throw ValidationError(fmt::format("annotations outside image '{}'", image_id),
                          std::move(offenders));
  }
}

}  // namespace densecount
