#include "densecount/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {
namespace {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Mean of square roots of ascending squared distances, summed in order.
double mean_of_roots(std::span<const double> ascending_squared) {
  double sum = 0.0;
  for (double d2 : ascending_squared) sum += std::sqrt(d2);
  return sum / static_cast<double>(ascending_squared.size());
}

void check_query(std::size_t n, std::size_t index, int k) {
  if (index >= n) {
    throw OutOfBounds(fmt::format("point index {} out of range for {} points", index, n));
  }
  if (k < 1) {
    throw ConfigError(fmt::format("k must be >= 1, got {}", k));
  }
  if (n - 1 < static_cast<std::size_t>(k)) {
    throw InsufficientNeighbors(
        fmt::format("{} other points available, {} neighbours requested", n - 1, k));
  }
}

}  // namespace

double knn_mean_distance(std::span<const Point> points, std::size_t index, int k) {
  check_query(points.size(), index, k);
  std::vector<double> d2;
  d2.reserve(points.size() - 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j != index) d2.push_back(squared_distance(points[index], points[j]));
  }
  const auto kk = static_cast<std::size_t>(k);
  std::partial_sort(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(kk), d2.end());
  return mean_of_roots(std::span(d2).first(kk));
}

KdTree::KdTree(std::span<const Point> points) : points_(points.begin(), points.end()) {
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  nodes_.reserve(points_.size());
  root_ = build(order, 0);
}

std::ptrdiff_t KdTree::build(std::span<std::size_t> order, int depth) {
  if (order.empty()) return -1;
  const int axis = depth % 2;
  const std::size_t mid = order.size() / 2;
  auto coord = [&](std::size_t i) { return axis == 0 ? points_[i].x : points_[i].y; };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(mid),
                   order.end(), [&](std::size_t a, std::size_t b) {
                     const double ca = coord(a);
                     const double cb = coord(b);
                     return ca < cb || (ca == cb && a < b);
                   });
  const auto id = static_cast<std::ptrdiff_t>(nodes_.size());
  nodes_.push_back(Node{order[mid], axis, -1, -1});
  const std::ptrdiff_t left = build(order.first(mid), depth + 1);
  const std::ptrdiff_t right = build(order.subspan(mid + 1), depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

// `heap` is a max-heap of the best squared distances found so far.
void KdTree::search(std::ptrdiff_t node_id, std::size_t query, std::size_t k,
                    std::vector<double>& heap) const {
  if (node_id < 0) return;
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  const Point& q = points_[query];
  const Point& p = points_[node.point];

  if (node.point != query) {
    const double d2 = squared_distance(q, p);
    if (heap.size() < k) {
      heap.push_back(d2);
      std::push_heap(heap.begin(), heap.end());
    } else if (d2 < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = d2;
      std::push_heap(heap.begin(), heap.end());
    }
  }

  const double delta = node.axis == 0 ? q.x - p.x : q.y - p.y;
  const std::ptrdiff_t near = delta < 0.0 ? node.left : node.right;
  const std::ptrdiff_t far = delta < 0.0 ? node.right : node.left;
  search(near, query, k, heap);
  if (heap.size() < k || delta * delta <= heap.front()) {
    search(far, query, k, heap);
  }
}

double KdTree::mean_distance(std::size_t index, int k) const {
  check_query(points_.size(), index, k);
  std::vector<double> heap;
  heap.reserve(static_cast<std::size_t>(k) + 1);
  search(root_, index, static_cast<std::size_t>(k), heap);
  std::sort_heap(heap.begin(), heap.end());
  return mean_of_roots(heap);
}

}  // namespace densecount
