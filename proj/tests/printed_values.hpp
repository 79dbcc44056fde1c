// Published statistics the library must reproduce from bundled data.
#ifndef DENSECOUNT_TESTS_PRINTED_VALUES_HPP
#define DENSECOUNT_TESTS_PRINTED_VALUES_HPP

#include <cmath>
#include <string>
#include <vector>

namespace densecount::printed {

struct Spread {
  std::string variety;
  double value;  // relative spread, rounded to 2 decimals
};

inline const std::vector<Spread>& cluster_weight_spread() {
  static const std::vector<Spread> v = {
      {"Chardonnay", 0.06}, {"Lagrein", 0.06},         {"Marzemino", 0.04}, {"Pinot Gris", 0.09},
      {"Pinot Noir", 0.05}, {"Sauvignon Blanc", 0.09}, {"Traminer", 0.06},
  };
  return v;
}

inline const std::vector<Spread>& berry_weight_spread() {
  static const std::vector<Spread> v = {
      {"Chardonnay", 0.03}, {"Lagrein", 0.06},         {"Marzemino", 0.05}, {"Pinot Gris", 0.06},
      {"Pinot Noir", 0.03}, {"Sauvignon Blanc", 0.06}, {"Traminer", 0.08},
  };
  return v;
}

struct OverallRatio {
  std::string label;
  double overall_error;
  double berries;
  double percent;
};

inline const std::vector<OverallRatio>& overall_ratios() {
  static const std::vector<OverallRatio> v = {
      {"test split", 10.65, 3653, 0.29}, {"Chardonnay", 6.38, 169, 3.77},
      {"Lagrein", 22.05, 328, 6.72},     {"Marzemino", 35.31, 301, 11.73},
      {"Pinot Gris", 11.08, 1298, 0.85}, {"Pinot Noir", 11.62, 582, 2.00},
      {"Sauvignon", 12.54, 483, 2.60},   {"Traminer", 5.52, 492, 1.12},
  };
  return v;
}

inline double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace densecount::printed

#endif  // DENSECOUNT_TESTS_PRINTED_VALUES_HPP
