#ifndef DENSECOUNT_REPORT_IO_HPP
#define DENSECOUNT_REPORT_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "densecount/metrics.hpp"

namespace densecount {

/// Machine-readable report (JSON). Doubles are written with enough digits
/// to parse back to the same value.
std::string report_to_json(const MetricsReport& report);
MetricsReport report_from_json(std::string_view json);

/// Human-readable table in the Per Image / Overall layout:
///   n  MAE  MAE (%)  MSE  |  N  MAE  MAE (%)
/// followed by one row per group and, when present, the cross-fold
/// mean +- std rows.
std::string format_report(const MetricsReport& report, std::string_view title = {});

/// Predictions file: `image_id<TAB>predicted_count` per line, '#' comments.
std::map<std::string, double> parse_predictions(std::string_view text,
                                                std::string_view source = "<predictions>");
std::map<std::string, double> load_predictions(const std::filesystem::path& path);
std::string format_predictions(const std::map<std::string, double>& predictions);

}  // namespace densecount

#endif  // DENSECOUNT_REPORT_IO_HPP
