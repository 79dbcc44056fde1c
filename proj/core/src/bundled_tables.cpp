#include "densecount/yield.hpp"

namespace densecount {
namespace {

// Average bunch weight (g) per variety, Trentino.
constexpr std::string_view kClusterWeights =
    "# average cluster weight (g)\n"
    "variety\t2013\t2014\t2015\t2016\t2017\t2018\n"
    "Chardonnay\t170\t184\t176\t172\t172\t208\n"
    "Lagrein\t280\t279\t325\t265\t259\t264\n"
    "Marzemino\t308\t311\t336\t326\t350\t318\n"
    "Pinot Gris\t164\t177\t181\t141\t167\t205\n"
    "Pinot Noir\t149\t174\t159\t155\t158\t175\n"
    "Sauvignon Blanc\t169\t208\t173\t163\t178\t205\n"
    "Traminer\t138\t155\t174\t143\t157\t151\n";

// Average single-berry weight (g) per variety, Trentino.
constexpr std::string_view kBerryWeights =
    "# average single berry weight (g)\n"
    "variety\t2016\t2017\t2018\n"
    "Chardonnay\t1.6\t1.6\t1.7\n"
    "Lagrein\t1.9\t2.2\t2.0\n"
    "Marzemino\t2.1\t2.3\t-\n"
    "Pinot Gris\t1.4\t1.6\t1.6\n"
    "Pinot Noir\t1.5\t1.6\t1.6\n"
    "Sauvignon Blanc\t-\t1.8\t1.6\n"
    "Traminer\t1.4\t1.7\t1.7\n";

}  // namespace

std::string_view bundled_cluster_weight_text() { return kClusterWeights; }
std::string_view bundled_berry_weight_text() { return kBerryWeights; }

const BundledTables& bundled_tables() {
  static const BundledTables tables{
      parse_series_table(kClusterWeights, "<bundled cluster weights>"),
      parse_series_table(kBerryWeights, "<bundled berry weights>"),
  };
  return tables;
}

}  // namespace densecount
