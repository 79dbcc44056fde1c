#ifndef DENSECOUNT_DENSITY_MAP_HPP
#define DENSECOUNT_DENSITY_MAP_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace densecount {

/// Non-negative grid whose sum is a count. `scale` is cells per source pixel,
/// so a map pooled by a factor of 8 carries scale 1/8.
class DensityMap {
 public:
  DensityMap() = default;
  DensityMap(std::size_t rows, std::size_t cols, double scale = 1.0);
  /// Throws ConfigError unless values.size() == rows*cols, every value is a
  /// finite non-negative number and scale is finite and positive.
  DensityMap(std::size_t rows, std::size_t cols, std::vector<double> values,
             double scale = 1.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  double scale() const { return scale_; }
  bool empty() const { return values_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const DensityMap&, const DensityMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double scale_ = 1.0;
  std::vector<double> values_;
};

/// Sum of all cells (compensated summation, fixed row-major order).
double integrate(const DensityMap& map);

/// Sum-pools factor x factor blocks. Partial blocks at the right and bottom
/// edges are pooled as they are. Mass is preserved.
DensityMap downsample(const DensityMap& map, int factor);

}  // namespace densecount

#endif  // DENSECOUNT_DENSITY_MAP_HPP
