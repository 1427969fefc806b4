#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiberplan/costmodel.hpp"
#include "fiberplan/demand.hpp"
#include "fiberplan/graph.hpp"
#include "fiberplan/lca.hpp"
#include "fiberplan/netdesign.hpp"

namespace fiberplan::report {

// Social carbon cost: tonnes CO2e times the carbon price.
double scc(double total_kg_co2e, double carbon_price_usd_per_tonne);

// The part of one network design that falls inside one subregion.
struct DesignShare {
  net::Level level = net::Level::Access;
  net::Algorithm algorithm = net::Algorithm::Mst;
  std::string subregion_id;
  double length_km = 0;
  std::size_t node_count = 0;
  double opex_share = 0;  // fraction of the network's operating cost
};

struct ShareOutcome {
  DesignShare share;
  cost::CostBreakdown cost;
  lca::EmissionsBreakdown emissions;
};

// Prices every share against the users of its subregion. Throws KeyMismatch
// when a share names a subregion without a demand record.
std::vector<ShareOutcome> evaluate_shares(std::span<const DesignShare> shares,
                                          std::span<const demand::SubregionDemand> demand,
                                          const cost::CostBook& cost_book,
                                          const lca::EmissionFactorBook& emission_book);

struct DecileReportRow {
  int decile = 0;
  net::Level level = net::Level::Access;
  net::Algorithm algorithm = net::Algorithm::Mst;
  double users = 0;
  double total_length_km = 0;
  double tco_usd = 0;
  std::optional<double> annualized_tco_per_user_usd;
  std::optional<double> monthly_tco_per_user_usd;
  double total_kg_co2e = 0;
  std::optional<double> per_user_kg_co2e;
  std::optional<double> annualized_per_user_kg_co2e;
  double scc_usd = 0;
  std::optional<double> scc_per_user_usd;
  std::optional<double> annualized_scc_per_user_usd;
};

// One row per (decile, level, algorithm) over every decile present in `demand`
// and every (level, algorithm) present in `outcomes`, sorted in that order.
// Users per row are the summed users of all subregions in the decile.
std::vector<DecileReportRow> build_report(std::span<const ShareOutcome> outcomes,
                                          std::span<const demand::SubregionDemand> demand,
                                          const cost::CostBook& cost_book,
                                          const lca::EmissionFactorBook& emission_book);

// Numeric report columns in CSV order.
struct Metric {
  std::string_view name;
  std::function<std::optional<double>(const DecileReportRow&)> value;
};
const std::vector<Metric>& report_metrics();

struct OutputMetadata {
  std::string cost_book_hash;
  std::string emission_book_hash;
  double alpha = 0;
  double p_node_kw = 0;

  static OutputMetadata from_books(const cost::CostBook& cost_book, const lca::EmissionFactorBook& emission_book);
  // "# fiberplan cost_book=<hash> emission_book=<hash> alpha=<g> p_node_kw=<g>"
  std::string comment_line() const;
};

std::string format_value(double value);                  // %.6g
std::string format_value(const std::optional<double>& value);  // empty when undefined

inline constexpr std::string_view kReportHeader =
    "decile,level,algorithm,users,total_length_km,tco_usd,annualized_tco_per_user_usd,"
    "monthly_tco_per_user_usd,total_kg_co2e,per_user_kg_co2e,annualized_per_user_kg_co2e,scc_usd,"
    "scc_per_user_usd,annualized_scc_per_user_usd";

// Metadata comment line, fixed header, one line per row. Throws EmptyReport.
std::string report_csv(std::span<const DecileReportRow> rows, const OutputMetadata& meta);

// GeoJSON FeatureCollection of one or more designs: a LineString per edge
// {level, algorithm, weight_km} and a Point per settlement node {id, role, connected}.
std::string design_geojson(std::span<const net::DesignResult> designs,
                           const net::NodeClassification& classification, const OutputMetadata& meta);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fiberplan::report
