#ifndef DENSECOUNT_ANNOTATIONS_HPP
#define DENSECOUNT_ANNOTATIONS_HPP

#include <string>
#include <vector>

namespace densecount {

/// Continuous pixel coordinate. Pixel (c, r) covers [c, c+1) x [r, r+1).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Berry centres labelled on one image. Duplicates are allowed.
struct PointAnnotationSet {
  std::string image_id;
  std::vector<Point> points;
  int width = 0;
  int height = 0;

  std::size_t count() const { return points.size(); }

  /// Throws ValidationError naming every point outside [0,width) x [0,height),
  /// or if the dimensions are not positive.
  void validate() const;
};

}  // namespace densecount

#endif  // DENSECOUNT_ANNOTATIONS_HPP
