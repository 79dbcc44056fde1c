#include "densecount/density_map.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {

DensityMap::DensityMap(std::size_t rows, std::size_t cols, double scale)
    : rows_(rows), cols_(cols), scale_(scale), values_(rows * cols, 0.0) {
  if (!(std::isfinite(scale) && scale > 0.0)) {
    throw ConfigError(fmt::format("density map scale must be positive, got {}", scale));
  }
}

DensityMap::DensityMap(std::size_t rows, std::size_t cols, std::vector<double> values,
                       double scale)
    : rows_(rows), cols_(cols), scale_(scale), values_(std::move(values)) {
  if (!(std::isfinite(scale) && scale > 0.0)) {
    throw ConfigError(fmt::format("density map scale must be positive, got {}", scale));
  }
  if (values_.size() != rows * cols) {
    throw ConfigError(fmt::format("density map {}x{} needs {} values, got {}", rows, cols,
                                  rows * cols, values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(std::isfinite(values_[i]) && values_[i] >= 0.0)) {
      throw ConfigError(fmt::format("density cell {} is {}", i, values_[i]));
    }
  }
}

double integrate(const DensityMap& map) {
  // Neumaier summation.
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : map.values()) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

DensityMap downsample(const DensityMap& map, int factor) {
  if (factor < 1) {
    throw ConfigError(fmt::format("downsample factor must be >= 1, got {}", factor));
  }
  if (factor == 1) return map;
  const auto f = static_cast<std::size_t>(factor);
  const std::size_t rows = (map.rows() + f - 1) / f;
  const std::size_t cols = (map.cols() + f - 1) / f;
  DensityMap out(rows, cols, map.scale() / factor);
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      out(r / f, c / f) += map(r, c);
    }
  }
  return out;
}

}  // namespace densecount
