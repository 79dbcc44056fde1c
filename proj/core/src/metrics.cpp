#include "densecount/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "densecount/errors.hpp"

namespace densecount {
namespace {

void require_nonempty(std::span<const CountPair> pairs, const char* what) {
  if (pairs.empty()) throw EmptyInput(fmt::format("{} of an empty pair set", what));
}

MeanStd mean_std(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

double mae(std::span<const CountPair> pairs) {
  require_nonempty(pairs, "MAE");
  double sum = 0.0;
  for (const auto& p : pairs) sum += std::abs(p.predicted - p.ground_truth);
  return sum / static_cast<double>(pairs.size());
}

double mse(std::span<const CountPair> pairs) {
  require_nonempty(pairs, "MSE");
  double sum = 0.0;
  for (const auto& p : pairs) {
    const double e = p.predicted - p.ground_truth;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

double overall_mae(std::span<const CountPair> pairs) {
  require_nonempty(pairs, "overall MAE");
  double predicted = 0.0;
  double truth = 0.0;
  for (const auto& p : pairs) {
    predicted += p.predicted;
    truth += p.ground_truth;
  }
  return std::abs(predicted - truth);
}

RelativeErrors relative_errors(std::span<const CountPair> pairs) {
  RelativeErrors out;
  double rel_sum = 0.0;
  std::size_t rel_n = 0;
  double predicted = 0.0;
  double truth = 0.0;
  for (const auto& p : pairs) {
    predicted += p.predicted;
    truth += p.ground_truth;
    if (p.ground_truth > 0.0) {
      rel_sum += std::abs(p.predicted - p.ground_truth) / p.ground_truth;
      ++rel_n;
    } else {
      ++out.excluded;
    }
  }
  if (rel_n > 0) out.mae_pct = 100.0 * rel_sum / static_cast<double>(rel_n);
  if (truth > 0.0) out.overall_mae_pct = 100.0 * std::abs(predicted - truth) / truth;
  return out;
}

bool operator==(const MetricsReport& a, const MetricsReport& b) {
  return a.n_images == b.n_images && a.n_berries == b.n_berries &&
         a.n_predicted == b.n_predicted && a.mae == b.mae && a.mae_pct == b.mae_pct &&
         a.mse == b.mse && a.overall_mae == b.overall_mae &&
         a.overall_mae_pct == b.overall_mae_pct &&
         a.signed_overall_error == b.signed_overall_error &&
         a.relative_excluded == b.relative_excluded && a.groups == b.groups &&
         a.cross_fold == b.cross_fold;
}

bool operator==(const GroupReport& a, const GroupReport& b) {
  return a.label == b.label && a.report == b.report;
}

MetricsReport make_report(std::span<const CountPair> pairs) {
  require_nonempty(pairs, "report");
  for (const auto& p : pairs) {
    if (!(p.ground_truth >= 0.0) || !std::isfinite(p.ground_truth) || !std::isfinite(p.predicted)) {
      throw ConfigError(fmt::format("image '{}': counts must be finite with ground truth >= 0",
                                    p.image_id));
    }
  }
  MetricsReport report;
  report.n_images = pairs.size();
  for (const auto& p : pairs) {
    report.n_berries += p.ground_truth;
    report.n_predicted += p.predicted;
  }
  report.mae = mae(pairs);
  report.mse = mse(pairs);
  report.overall_mae = overall_mae(pairs);
  report.signed_overall_error = report.n_predicted - report.n_berries;
  const RelativeErrors rel = relative_errors(pairs);
  report.mae_pct = rel.mae_pct;
  report.overall_mae_pct = rel.overall_mae_pct;
  report.relative_excluded = rel.excluded;
  return report;
}

MetricsReport grouped_report(std::span<const CountPair> pairs, GroupBy group_by) {
  MetricsReport report = make_report(pairs);
  std::vector<std::string> missing;
  std::map<std::string, std::vector<CountPair>> by_variety;
  std::map<int, std::vector<CountPair>> by_fold;
  for (const auto& p : pairs) {
    if (group_by == GroupBy::Variety) {
      if (!p.group) {
        missing.push_back(p.image_id);
        continue;
      }
      by_variety[*p.group].push_back(p);
    } else {
      if (!p.fold) {
        missing.push_back(p.image_id);
        continue;
      }
      by_fold[*p.fold].push_back(p);
    }
  }
  if (!missing.empty()) {
    throw ConfigError(fmt::format("{} pair(s) lack a {} label, first: '{}'", missing.size(),
                                  group_by == GroupBy::Variety ? "variety" : "fold",
                                  missing.front()));
  }
  for (const auto& [label, group] : by_variety) {
    report.groups.push_back({label, make_report(group)});
  }
  for (const auto& [fold, group] : by_fold) {
    report.groups.push_back({std::to_string(fold), make_report(group)});
  }
  return report;
}

CrossFoldSummary cv_aggregate(std::span<const MetricsReport> per_fold) {
  if (per_fold.size() < 2) {
    throw EmptyInput(fmt::format("cross-fold aggregation needs at least 2 folds, got {}",
                                 per_fold.size()));
  }
  CrossFoldSummary out;
  out.folds = per_fold.size();
  auto field = [&](auto get) {
    std::vector<double> xs;
    xs.reserve(per_fold.size());
    for (const auto& r : per_fold) xs.push_back(get(r));
    return mean_std(xs);
  };
  auto optional_field = [&](auto get) -> std::optional<MeanStd> {
    std::vector<double> xs;
    for (const auto& r : per_fold) {
      const std::optional<double> v = get(r);
      if (!v) return std::nullopt;
      xs.push_back(*v);
    }
    return mean_std(xs);
  };
  out.n_images = field([](const MetricsReport& r) { return static_cast<double>(r.n_images); });
  out.n_berries = field([](const MetricsReport& r) { return r.n_berries; });
  out.mae = field([](const MetricsReport& r) { return r.mae; });
  out.mse = field([](const MetricsReport& r) { return r.mse; });
  out.overall_mae = field([](const MetricsReport& r) { return r.overall_mae; });
  out.mae_pct = optional_field([](const MetricsReport& r) { return r.mae_pct; });
  out.overall_mae_pct = optional_field([](const MetricsReport& r) { return r.overall_mae_pct; });
  return out;
}

}  // namespace densecount
