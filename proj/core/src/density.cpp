#include "densecount/density.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "densecount/errors.hpp"
#include "densecount/knn.hpp"

namespace densecount {

KernelSpec KernelSpec::fixed(double sigma, double truncation_radius) {
  KernelSpec spec;
  spec.mode = KernelMode::Fixed;
  spec.sigma = sigma;
  spec.truncation_radius = truncation_radius;
  return spec;
}

KernelSpec KernelSpec::adaptive(int k, double beta, double fallback_sigma,
                                double truncation_radius) {
  KernelSpec spec;
  spec.mode = KernelMode::Adaptive;
  spec.k = k;
  spec.beta = beta;
  spec.fallback_sigma = fallback_sigma;
  spec.truncation_radius = truncation_radius;
  return spec;
}

void KernelSpec::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma)) throw ConfigError(fmt::format("sigma must be > 0, got {}", sigma));
  if (!positive(fallback_sigma)) {
    throw ConfigError(fmt::format("fallback sigma must be > 0, got {}", fallback_sigma));
  }
  if (!positive(beta)) throw ConfigError(fmt::format("beta must be > 0, got {}", beta));
  if (k < 1) throw ConfigError(fmt::format("k must be >= 1, got {}", k));
  if (!(std::isfinite(truncation_radius) && truncation_radius >= 1.0)) {
    throw ConfigError(
        fmt::format("truncation radius must be >= 1, got {}", truncation_radius));
  }
}

std::vector<double> adaptive_sigmas(const PointAnnotationSet& annotations,
                                    const KernelSpec& spec) {
  spec.validate();
  if (spec.mode != KernelMode::Adaptive) {
    throw ConfigError("adaptive_sigmas requires an adaptive kernel spec");
  }
  const std::size_t n = annotations.points.size();
  if (n <= static_cast<std::size_t>(spec.k)) {
    return std::vector<double>(n, spec.fallback_sigma);
  }
  const KdTree tree(annotations.points);
  std::vector<double> sigmas(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigmas[i] = std::max(spec.beta * tree.mean_distance(i, spec.k), kMinAdaptiveSigma);
  }
  return sigmas;
}

void render_gaussian(DensityMap& grid, Point center, double sigma,
                     double truncation_radius) {
  const auto cols = static_cast<double>(grid.cols());
  const auto rows = static_cast<double>(grid.rows());
  if (!(center.x >= 0.0 && center.x < cols && center.y >= 0.0 && center.y < rows)) {
    throw OutOfBounds(fmt::format("kernel centre ({}, {}) outside {}x{} grid", center.x,
                                  center.y, grid.cols(), grid.rows()));
  }
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw ConfigError(fmt::format("sigma must be > 0, got {}", sigma));
  }

  // Cell c has its centre at c + 0.5; include cells whose centre lies within
  // `radius` of the kernel centre.
  const double radius = truncation_radius * sigma;
  const double radius2 = radius * radius;
  const auto c_lo = static_cast<std::ptrdiff_t>(std::max(0.0, std::ceil(center.x - radius - 0.5)));
  const auto c_hi = static_cast<std::ptrdiff_t>(std::min(cols - 1.0, std::floor(center.x + radius - 0.5)));
  const auto r_lo = static_cast<std::ptrdiff_t>(std::max(0.0, std::ceil(center.y - radius - 0.5)));
  const auto r_hi = static_cast<std::ptrdiff_t>(std::min(rows - 1.0, std::floor(center.y + radius - 0.5)));

  const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
  struct Cell {
    std::size_t r, c;
    double w;
  };
  std::vector<Cell> support;
  double z = 0.0;
  for (std::ptrdiff_t r = r_lo; r <= r_hi; ++r) {
    const double dy = (static_cast<double>(r) + 0.5) - center.y;
    for (std::ptrdiff_t c = c_lo; c <= c_hi; ++c) {
      const double dx = (static_cast<double>(c) + 0.5) - center.x;
      const double d2 = dx * dx + dy * dy;
      if (d2 > radius2) continue;
      const double w = std::exp(-d2 * inv_two_var);
      support.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), w});
      z += w;
    }
  }

  if (support.empty() || !(z > 0.0) || !std::isfinite(z)) {
    grid(static_cast<std::size_t>(center.y), static_cast<std::size_t>(center.x)) += 1.0;
    return;
  }
  for (const Cell& cell : support) grid(cell.r, cell.c) += cell.w / z;
}

DensityMap generate_density_map(const PointAnnotationSet& annotations,
                                const KernelSpec& spec) {
  spec.validate();
  annotations.validate();
  DensityMap map(static_cast<std::size_t>(annotations.height),
                 static_cast<std::size_t>(annotations.width));
  if (annotations.points.empty()) return map;

  std::vector<double> sigmas;
  if (spec.mode == KernelMode::Adaptive) {
    sigmas = adaptive_sigmas(annotations, spec);
  } else {
    sigmas.assign(annotations.points.size(), spec.sigma);
  }
  for (std::size_t i = 0; i < annotations.points.size(); ++i) {
    render_gaussian(map, annotations.points[i], sigmas[i], spec.truncation_radius);
  }
  return map;
}

}  // namespace densecount
