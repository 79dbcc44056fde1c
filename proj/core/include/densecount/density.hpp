#ifndef DENSECOUNT_DENSITY_HPP
#define DENSECOUNT_DENSITY_HPP

#include <vector>

#include "densecount/annotations.hpp"
#include "densecount/density_map.hpp"

namespace densecount {

enum class KernelMode { Fixed, Adaptive };

/// Gaussian kernel configuration for ground-truth synthesis.
///
/// Fixed mode uses `sigma` for every point. Adaptive mode uses
/// sigma_i = beta * (mean distance to the k nearest other points), with
/// `fallback_sigma` for images that have k or fewer points. Kernels are
/// truncated at `truncation_radius` sigmas.
struct KernelSpec {
  KernelMode mode = KernelMode::Adaptive;
  double sigma = 4.0;
  int k = 3;
  double beta = 0.3;
  double fallback_sigma = 15.0;
  double truncation_radius = 4.0;

  static KernelSpec fixed(double sigma, double truncation_radius = 4.0);
  static KernelSpec adaptive(int k = 3, double beta = 0.3, double fallback_sigma = 15.0,
                             double truncation_radius = 4.0);

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
};

/// Smallest sigma an adaptive kernel may take; tighter neighbourhoods
/// (e.g. duplicate annotations) are clamped up to it.
inline constexpr double kMinAdaptiveSigma = 0.5;

/// Per-point sigma for an adaptive spec, in annotation order.
std::vector<double> adaptive_sigmas(const PointAnnotationSet& annotations,
                                    const KernelSpec& spec);

/// Adds a unit-mass Gaussian centred at `center` to `grid`.
///
/// The kernel is evaluated at cell centres within truncation_radius * sigma
/// and renormalised over the cells that land inside the grid, so the added
/// mass is 1 even when clipped by the border. If no cell centre lies inside
/// the support, the whole unit goes to the cell containing `center`.
/// Throws OutOfBounds if `center` is outside the grid.
void render_gaussian(DensityMap& grid, Point center, double sigma,
                     double truncation_radius);

/// Ground-truth density map at annotation resolution (scale 1). Its sum is
/// the annotation count up to rounding.
DensityMap generate_density_map(const PointAnnotationSet& annotations,
                                const KernelSpec& spec);

}  // namespace densecount

#endif  // DENSECOUNT_DENSITY_HPP
