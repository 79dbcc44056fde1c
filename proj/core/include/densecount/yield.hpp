#ifndef DENSECOUNT_YIELD_HPP
#define DENSECOUNT_YIELD_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace densecount {

// Yield models. All weights are grams; the surface unit of `vines_per_unit`
// is whatever the caller uses (hectare in the examples).

/// Y = vines * bunches/vine * bunch weight.
double yield_from_bunch_weight(double vines_per_unit, double bunches_per_vine,
                               double bunch_weight);

/// Y = vines * bunches/vine * berries/bunch * berry weight.
double yield_from_berry_count(double vines_per_unit, double bunches_per_vine,
                              double berries_per_bunch, double berry_weight);

/// Y = total berries counted over a panoramic view * berry weight.
double yield_panoramic(double total_berries, double berry_weight);

inline double yield_eq1(double nv, double nb, double pb) {
  return yield_from_bunch_weight(nv, nb, pb);
}
inline double yield_eq2(double nv, double nb, double na, double pa) {
  return yield_from_berry_count(nv, nb, na, pa);
}

struct YearValue {
  int year = 0;
  std::optional<double> grams;

  friend bool operator==(const YearValue&, const YearValue&) = default;
};

/// One variety's yearly weights; missing years carry no value.
struct HistoricalSeries {
  std::string variety;
  std::vector<YearValue> values;

  std::vector<double> present() const;
  std::optional<double> at(int year) const;

  friend bool operator==(const HistoricalSeries&, const HistoricalSeries&) = default;
};

/// Relative year-to-year spread of a series: the mean absolute deviation
/// from the mean, divided by the median, over present entries only.
/// Throws EmptyInput when no entry is present.
double pct_mean_deviation(const HistoricalSeries& series);

struct SeriesTable {
  std::vector<int> years;
  std::vector<HistoricalSeries> rows;

  /// Case-insensitive variety lookup; nullptr when absent.
  const HistoricalSeries* find(std::string_view variety) const;

  /// Weight for (variety, year). Throws ConfigError listing the available
  /// varieties or years when either is unknown or the entry is missing.
  double lookup(std::string_view variety, int year) const;
};

// Series table text: header `variety<TAB>year<TAB>year...`, then one row per
// variety with `-` for a missing year. '#' comment lines allowed.
SeriesTable parse_series_table(std::string_view text, std::string_view source = "<series>");
std::string format_series_table(const SeriesTable& table);

/// Historical weights shipped with the library.
struct BundledTables {
  SeriesTable cluster_weights;  // average bunch weight, 2013-2018
  SeriesTable berry_weights;    // average single-berry weight, 2016-2018
};

const BundledTables& bundled_tables();

/// The raw text the bundled tables are parsed from.
std::string_view bundled_cluster_weight_text();
std::string_view bundled_berry_weight_text();

}  // namespace densecount

#endif  // DENSECOUNT_YIELD_HPP
