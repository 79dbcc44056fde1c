#include "densecount/report_io.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "densecount/errors.hpp"
#include "text_util.hpp"

namespace densecount {
namespace {

using nlohmann::json;

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json mean_std_to_json(const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.std}}; }
MeanStd mean_std_from_json(const json& j) { return {j.at("mean").get<double>(), j.at("std").get<double>()}; }

json to_json(const MetricsReport& r) {
  json j = {
      {"n_images", r.n_images},
      {"n_berries", r.n_berries},
      {"n_predicted", r.n_predicted},
      {"mae", r.mae},
      {"mae_pct", optional_to_json(r.mae_pct)},
      {"mse", r.mse},
      {"rmse", r.mse},
      {"overall_mae", r.overall_mae},
      {"overall_mae_pct", optional_to_json(r.overall_mae_pct)},
      {"signed_overall_error", r.signed_overall_error},
      {"relative_excluded", r.relative_excluded},
  };
  if (!r.groups.empty()) {
    json groups = json::array();
    for (const auto& g : r.groups) groups.push_back({{"label", g.label}, {"report", to_json(g.report)}});
    j["groups"] = std::move(groups);
  }
  if (r.cross_fold) {
    const auto& cf = *r.cross_fold;
    json c = {
        {"folds", cf.folds},
        {"n_images", mean_std_to_json(cf.n_images)},
        {"n_berries", mean_std_to_json(cf.n_berries)},
        {"mae", mean_std_to_json(cf.mae)},
        {"mse", mean_std_to_json(cf.mse)},
        {"overall_mae", mean_std_to_json(cf.overall_mae)},
    };
    c["mae_pct"] = cf.mae_pct ? mean_std_to_json(*cf.mae_pct) : json(nullptr);
    c["overall_mae_pct"] = cf.overall_mae_pct ? mean_std_to_json(*cf.overall_mae_pct) : json(nullptr);
    j["cross_fold"] = std::move(c);
  }
  return j;
}

MetricsReport from_json(const json& j) {
  MetricsReport r;
  r.n_images = j.at("n_images").get<std::size_t>();
  r.n_berries = j.at("n_berries").get<double>();
  r.n_predicted = j.at("n_predicted").get<double>();
  r.mae = j.at("mae").get<double>();
  r.mae_pct = optional_from_json(j.at("mae_pct"));
  r.mse = j.at("mse").get<double>();
  r.overall_mae = j.at("overall_mae").get<double>();
  r.overall_mae_pct = optional_from_json(j.at("overall_mae_pct"));
  r.signed_overall_error = j.at("signed_overall_error").get<double>();
  r.relative_excluded = j.at("relative_excluded").get<std::size_t>();
  if (j.contains("groups")) {
    for (const auto& g : j.at("groups")) {
      r.groups.push_back({g.at("label").get<std::string>(), from_json(g.at("report"))});
    }
  }
  if (j.contains("cross_fold")) {
    const auto& c = j.at("cross_fold");
    CrossFoldSummary cf;
    cf.folds = c.at("folds").get<std::size_t>();
    cf.n_images = mean_std_from_json(c.at("n_images"));
    cf.n_berries = mean_std_from_json(c.at("n_berries"));
    cf.mae = mean_std_from_json(c.at("mae"));
    cf.mse = mean_std_from_json(c.at("mse"));
    cf.overall_mae = mean_std_from_json(c.at("overall_mae"));
    if (!c.at("mae_pct").is_null()) cf.mae_pct = mean_std_from_json(c.at("mae_pct"));
    if (!c.at("overall_mae_pct").is_null()) cf.overall_mae_pct = mean_std_from_json(c.at("overall_mae_pct"));
    r.cross_fold = cf;
  }
  return r;
}

std::string count(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return fmt::format("{:.0f}", v);
  return fmt::format("{:.2f}", v);
}

std::string pct(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}%", *v) : std::string("-");
}

std::string pm(const MeanStd& m, int decimals = 2, std::string_view suffix = {}) {
  return fmt::format("{:.{}f}{} ± {:.{}f}{}", m.mean, decimals, suffix, m.std, decimals, suffix);
}

}  // namespace

std::string report_to_json(const MetricsReport& report) { return to_json(report).dump(2) + "\n"; }

MetricsReport report_from_json(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError("<report>", 0, "json", e.what());
  }
}

std::string format_report(const MetricsReport& r, std::string_view title) {
  std::string out;
  if (!title.empty()) out += fmt::format("{}\n", title);

  out += fmt::format("{:<12} {:>10} {:>10} {:>10} {:>10}\n", "", "n", "MAE", "MAE (%)", "MSE");
  out += fmt::format("{:<12} {:>10} {:>10.2f} {:>10} {:>10.2f}\n", "Per Image", r.n_images,
                     r.mae, pct(r.mae_pct), r.mse);
  out += fmt::format("{:<12} {:>10} {:>10.2f} {:>10}\n", "Overall", count(r.n_berries),
                     r.overall_mae, pct(r.overall_mae_pct));
  if (r.relative_excluded > 0) {
    out += fmt::format("({} image(s) with zero ground truth excluded from MAE (%))\n",
                       r.relative_excluded);
  }

  if (!r.groups.empty()) {
    std::size_t width = 5;
    for (const auto& g : r.groups) width = std::max(width, g.label.size());
    out += '\n';
    out += fmt::format("{:<{}} | {:>5} {:>8} {:>8} {:>8} | {:>8} {:>8} {:>8}\n", "", width,
                       "n", "MAE", "MAE (%)", "MSE", "N", "MAE", "MAE (%)");
    auto row = [&](std::string_view label, const MetricsReport& g) {
      return fmt::format("{:<{}} | {:>5} {:>8.2f} {:>8} {:>8.2f} | {:>8} {:>8.2f} {:>8}\n", label,
                         width, g.n_images, g.mae, pct(g.mae_pct), g.mse, count(g.n_berries),
                         g.overall_mae, pct(g.overall_mae_pct));
    };
    for (const auto& g : r.groups) out += row(g.label, g.report);
    out += row("Total", r);
  }

  if (r.cross_fold) {
    const auto& cf = *r.cross_fold;
    out += fmt::format("\n{}-fold CV (mean ± sample std across folds)\n", cf.folds);
    out += fmt::format("{:<12} n {}  MAE {}  MAE (%) {}  MSE {}\n", "Per Image",
                       pm(cf.n_images, 1), pm(cf.mae),
                       cf.mae_pct ? pm(*cf.mae_pct, 2, "%") : std::string("-"), pm(cf.mse));
    out += fmt::format("{:<12} N {}  MAE {}  MAE (%) {}\n", "Overall", pm(cf.n_berries, 1),
                       pm(cf.overall_mae),
                       cf.overall_mae_pct ? pm(*cf.overall_mae_pct, 2, "%") : std::string("-"));
  }
  return out;
}

std::map<std::string, double> parse_predictions(std::string_view text, std::string_view source) {
  std::map<std::string, double> out;
  const auto all_lines = detail::lines(text);
  for (std::size_t i = 0; i < all_lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = detail::trim(all_lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(std::string(source), lineno, "record", "expected image_id<TAB>count");
    }
    const std::string id(detail::trim(fields[0]));
    const double value = detail::parse_double(fields[1], source, lineno, "predicted_count");
    if (value < 0.0) {
      throw ParseError(std::string(source), lineno, "predicted_count", "count must be >= 0");
    }
    if (!out.emplace(id, value).second) {
      throw ParseError(std::string(source), lineno, "image_id",
                       fmt::format("duplicate image id '{}'", id));
    }
  }
  return out;
}

std::map<std::string, double> load_predictions(const std::filesystem::path& path) {
  return parse_predictions(detail::read_text(path), path.string());
}

std::string format_predictions(const std::map<std::string, double>& predictions) {
  std::string out;
  for (const auto& [id, value] : predictions) out += fmt::format("{}\t{}\n", id, detail::exact(value));
  return out;
}

}  // namespace densecount
