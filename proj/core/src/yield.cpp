#include "densecount/yield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "densecount/errors.hpp"
#include "text_util.hpp"

namespace densecount {
namespace {

void require_non_negative(std::initializer_list<double> values) {
  for (double v : values) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw ConfigError(fmt::format("yield inputs must be finite and >= 0, got {}", v));
    }
  }
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

double yield_from_bunch_weight(double vines_per_unit, double bunches_per_vine,
                               double bunch_weight) {
  require_non_negative({vines_per_unit, bunches_per_vine, bunch_weight});
  return vines_per_unit * bunches_per_vine * bunch_weight;
}

double yield_from_berry_count(double vines_per_unit, double bunches_per_vine,
                              double berries_per_bunch, double berry_weight) {
  require_non_negative({vines_per_unit, bunches_per_vine, berries_per_bunch, berry_weight});
  return vines_per_unit * bunches_per_vine * berries_per_bunch * berry_weight;
}

double yield_panoramic(double total_berries, double berry_weight) {
  require_non_negative({total_berries, berry_weight});
  return total_berries * berry_weight;
}

std::vector<double> HistoricalSeries::present() const {
  std::vector<double> out;
  for (const auto& v : values) {
    if (v.grams) out.push_back(*v.grams);
  }
  return out;
}

std::optional<double> HistoricalSeries::at(int year) const {
  for (const auto& v : values) {
    if (v.year == year) return v.grams;
  }
  return std::nullopt;
}

double pct_mean_deviation(const HistoricalSeries& series) {
  std::vector<double> xs = series.present();
  if (xs.empty()) {
    throw EmptyInput(fmt::format("series '{}' has no present values", series.variety));
  }
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double abs_dev = 0.0;
  for (double x : xs) abs_dev += std::abs(x - mean);
  const double mad = abs_dev / n;

  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  const double median = xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
  if (!(median > 0.0)) {
    throw ConfigError(fmt::format("series '{}' has a non-positive median", series.variety));
  }
  return mad / median;
}

const HistoricalSeries* SeriesTable::find(std::string_view variety) const {
  for (const auto& row : rows) {
    if (iequals(row.variety, variety)) return &row;
  }
  return nullptr;
}

double SeriesTable::lookup(std::string_view variety, int year) const {
  const HistoricalSeries* row = find(variety);
  if (row == nullptr) {
    std::vector<std::string> names;
    for (const auto& r : rows) names.push_back(r.variety);
    throw ConfigError(fmt::format("unknown variety '{}'; available: {}", variety,
                                  fmt::join(names, ", ")));
  }
  if (std::find(years.begin(), years.end(), year) == years.end()) {
    throw ConfigError(
        fmt::format("unknown year {}; available: {}", year, fmt::join(years, ", ")));
  }
  const auto value = row->at(year);
  if (!value) {
    std::vector<int> present;
    for (const auto& v : row->values) {
      if (v.grams) present.push_back(v.year);
    }
    throw ConfigError(fmt::format("no {} value for {}; available years: {}", row->variety, year,
                                  fmt::join(present, ", ")));
  }
  return *value;
}

SeriesTable parse_series_table(std::string_view text, std::string_view source) {
  SeriesTable table;
  bool have_header = false;
  const auto all_lines = detail::lines(text);
  for (std::size_t i = 0; i < all_lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = detail::trim(all_lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    if (!have_header) {
      if (fields.size() < 2 || detail::trim(fields[0]) != "variety") {
        throw ParseError(std::string(source), lineno, "header",
                         "expected 'variety<TAB>year...'");
      }
      for (std::size_t f = 1; f < fields.size(); ++f) {
        table.years.push_back(detail::parse_int<int>(fields[f], source, lineno, "year"));
      }
      have_header = true;
      continue;
    }
    if (fields.size() != table.years.size() + 1) {
      throw ParseError(std::string(source), lineno, "row",
                       fmt::format("expected {} fields, got {}", table.years.size() + 1,
                                   fields.size()));
    }
    HistoricalSeries row;
    row.variety = std::string(detail::trim(fields[0]));
    for (std::size_t f = 1; f < fields.size(); ++f) {
      YearValue v{table.years[f - 1], std::nullopt};
      const std::string_view cell = detail::trim(fields[f]);
      if (cell != "-") {
        const std::string field = fmt::format("{}", table.years[f - 1]);
        v.grams = detail::parse_double(cell, source, lineno, field);
        if (!(*v.grams > 0.0)) {
          throw ParseError(std::string(source), lineno, field, "weights must be > 0");
        }
      }
      row.values.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(std::string(source), 0, "header", "empty series table");
  return table;
}

std::string format_series_table(const SeriesTable& table) {
  std::string out = "variety";
  for (int year : table.years) out += fmt::format("\t{}", year);
  out += '\n';
  for (const auto& row : table.rows) {
    out += row.variety;
    for (const auto& v : row.values) {
      out += v.grams ? fmt::format("\t{}", detail::exact(*v.grams)) : std::string("\t-");
    }
    out += '\n';
  }
  return out;
}

}  // namespace densecount
