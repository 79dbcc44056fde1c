#ifndef DENSECOUNT_KNN_HPP
#define DENSECOUNT_KNN_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "densecount/annotations.hpp"

namespace densecount {

/// Mean Euclidean distance from points[index] to its k nearest *other*
/// points. Coincident duplicates count as distance 0. Linear scan.
///
/// Throws InsufficientNeighbors when fewer than k other points exist and
/// OutOfBounds when index is not a valid position.
double knn_mean_distance(std::span<const Point> points, std::size_t index, int k);

/// Static 2-d tree over a point set for repeated k-nearest queries.
///
/// Results are bit-identical to knn_mean_distance: both reduce to the same
/// multiset of k smallest squared distances, which is then summed in
/// ascending order.
class KdTree {
 public:
  explicit KdTree(std::span<const Point> points);

  std::size_t size() const { return points_.size(); }

  /// Same contract as knn_mean_distance for the indexed point.
  double mean_distance(std::size_t index, int k) const;

 private:
  struct Node {
    std::size_t point = 0;
    int axis = 0;
    std::ptrdiff_t left = -1;
    std::ptrdiff_t right = -1;
  };

  std::ptrdiff_t build(std::span<std::size_t> order, int depth);
  void search(std::ptrdiff_t node, std::size_t query, std::size_t k,
              std::vector<double>& heap) const;

  std::vector<Point> points_;
  std::vector<Node> nodes_;
  std::ptrdiff_t root_ = -1;
};

}  // namespace densecount

#endif  // DENSECOUNT_KNN_HPP
