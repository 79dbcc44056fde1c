#ifndef DENSECOUNT_METRICS_HPP
#define DENSECOUNT_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace densecount {

/// Predicted vs ground-truth count for one image.
struct CountPair {
  std::string image_id;
  double predicted = 0.0;
  double ground_truth = 0.0;
  std::optional<std::string> group;
  std::optional<int> fold;
};

/// Mean absolute count error. Throws EmptyInput on no pairs.
double mae(std::span<const CountPair> pairs);

/// Root of the mean squared count error. Named MSE in the crowd-counting
/// literature even though it is a root-mean-square.
double mse(std::span<const CountPair> pairs);
inline double rmse(std::span<const CountPair> pairs) { return mse(pairs); }

/// |sum(predicted) - sum(ground_truth)|. Over- and under-estimates cancel.
double overall_mae(std::span<const CountPair> pairs);

/// Relative errors as percentages.
///
/// mae_pct is the mean of per-image |C - GT| / GT over images with GT > 0;
/// images with GT == 0 are skipped and counted in `excluded`. overall_mae_pct
/// is |sum C - sum GT| / sum GT. Either is empty when undefined.
struct RelativeErrors {
  std::optional<double> mae_pct;
  std::optional<double> overall_mae_pct;
  std::size_t excluded = 0;
};

RelativeErrors relative_errors(std::span<const CountPair> pairs);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n-1) standard deviation

  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

/// Mean +- sample std of each report field across folds.
struct CrossFoldSummary {
  std::size_t folds = 0;
  MeanStd n_images;
  MeanStd n_berries;
  MeanStd mae;
  std::optional<MeanStd> mae_pct;
  MeanStd mse;
  MeanStd overall_mae;
  std::optional<MeanStd> overall_mae_pct;

  friend bool operator==(const CrossFoldSummary&, const CrossFoldSummary&) = default;
};

struct GroupReport;

/// Per-image and overall error statistics for a set of count pairs.
struct MetricsReport {
  std::size_t n_images = 0;
  double n_berries = 0.0;  // sum of ground truth
  double n_predicted = 0.0;
  double mae = 0.0;
  std::optional<double> mae_pct;
  double mse = 0.0;
  double overall_mae = 0.0;
  std::optional<double> overall_mae_pct;
  double signed_overall_error = 0.0;  // sum(C) - sum(GT)
  std::size_t relative_excluded = 0;

  std::vector<GroupReport> groups;
  std::optional<CrossFoldSummary> cross_fold;

  double rmse() const { return mse; }
};

struct GroupReport {
  std::string label;
  MetricsReport report;
};

bool operator==(const MetricsReport& a, const MetricsReport& b);
bool operator==(const GroupReport& a, const GroupReport& b);

/// Ungrouped report. Throws EmptyInput on no pairs.
MetricsReport make_report(std::span<const CountPair> pairs);

enum class GroupBy { Variety, Fold };

/// Report over all pairs plus one sub-report per group label, in label order
/// (numeric order for folds). Throws ConfigError if any pair lacks the label.
MetricsReport grouped_report(std::span<const CountPair> pairs, GroupBy group_by);

/// Mean and sample standard deviation across per-fold reports. Throws
/// EmptyInput for fewer than two folds.
CrossFoldSummary cv_aggregate(std::span<const MetricsReport> per_fold);

}  // namespace densecount

#endif  // DENSECOUNT_METRICS_HPP
