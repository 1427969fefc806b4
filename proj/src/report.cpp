#include "fiberplan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "fiberplan/error.hpp"
#include "fiberplan/params.hpp"

namespace fiberplan::report {

namespace {

std::optional<double> divide(double total, double users) {
  if (!(users > 0.0)) return std::nullopt;
  return total / users;
}

std::optional<double> scale(const std::optional<double>& v, double divisor) {
  if (!v) return std::nullopt;
  return *v / divisor;
}

// Nearest double to the value printed with seven decimals, so JSON output is
// the short decimal rather than the rounding residue.
double seven_decimals(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.7f", value);
  const double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

double six_significant(double value) { return std::strtod(format_value(value).c_str(), nullptr); }

}  // namespace

double scc(double total_kg_co2e, double carbon_price_usd_per_tonne) {
  return total_kg_co2e / 1000.0 * carbon_price_usd_per_tonne;
}

std::vector<ShareOutcome> evaluate_shares(std::span<const DesignShare> shares,
                                          std::span<const demand::SubregionDemand> demand,
                                          const cost::CostBook& cost_book,
                                          const lca::EmissionFactorBook& emission_book) {
  std::map<std::string_view, const demand::SubregionDemand*> by_id;
  for (const auto& d : demand) by_id.emplace(d.subregion_id, &d);
  std::vector<ShareOutcome> out;
  out.reserve(shares.size());
  for (const auto& s : shares) {
    auto it = by_id.find(s.subregion_id);
    if (it == by_id.end()) {
      throw Error(ErrorCategory::Data, "report", "KeyMismatch",
                  "design share for subregion " + s.subregion_id + " has no demand record");
    }
    const double users = demand::users_for_node(*it->second);
    out.push_back({s, cost::tco(s.node_count, s.length_km, cost_book, users, s.opex_share),
                   lca::total_emissions(s.length_km, s.node_count, users, emission_book)});
  }
  return out;
}

std::vector<DecileReportRow> build_report(std::span<const ShareOutcome> outcomes,
                                          std::span<const demand::SubregionDemand> demand,
                                          const cost::CostBook& cost_book,
                                          const lca::EmissionFactorBook& emission_book) {
  std::map<std::string_view, int> decile_of;
  std::map<int, double> users_in;
  for (const auto& d : demand) {
    decile_of.emplace(d.subregion_id, d.decile);
    users_in[d.decile] += demand::users_for_node(d);
  }

  using Key = std::tuple<int, int, int>;  // decile, level, algorithm
  std::set<std::pair<net::Level, net::Algorithm>> runs;
  std::map<Key, DecileReportRow> rows;
  for (const auto& o : outcomes) {
    auto it = decile_of.find(o.share.subregion_id);
    if (it == decile_of.end()) {
      throw Error(ErrorCategory::Data, "report", "KeyMismatch",
                  "design share for subregion " + o.share.subregion_id + " has no demand record");
    }
    runs.emplace(o.share.level, o.share.algorithm);
    auto& row = rows[{it->second, static_cast<int>(o.share.level), static_cast<int>(o.share.algorithm)}];
    row.total_length_km += o.share.length_km;
    row.tco_usd += o.cost.tco_usd;
    row.total_kg_co2e += o.emissions.total_kg;
  }

  std::vector<DecileReportRow> out;
  for (const auto& [decile, users] : users_in) {
    for (const auto& [level, algorithm] : runs) {
      DecileReportRow row = rows[{decile, static_cast<int>(level), static_cast<int>(algorithm)}];
      row.decile = decile;
      row.level = level;
      row.algorithm = algorithm;
      row.users = users;
      row.annualized_tco_per_user_usd = scale(divide(row.tco_usd, users), cost_book.assessment_years);
      row.monthly_tco_per_user_usd = scale(row.annualized_tco_per_user_usd, 12.0);
      row.per_user_kg_co2e = divide(row.total_kg_co2e, users);
      row.annualized_per_user_kg_co2e = scale(row.per_user_kg_co2e, emission_book.lifetime_years);
      row.scc_usd = scc(row.total_kg_co2e, cost_book.carbon_price_usd_per_tonne);
      row.scc_per_user_usd = divide(row.scc_usd, users);
      row.annualized_scc_per_user_usd = scale(row.scc_per_user_usd, cost_book.assessment_years);
      out.push_back(std::move(row));
    }
  }
  std::sort(out.begin(), out.end(), [](const DecileReportRow& a, const DecileReportRow& b) {
    return std::tuple(a.decile, static_cast<int>(a.level), static_cast<int>(a.algorithm)) <
           std::tuple(b.decile, static_cast<int>(b.level), static_cast<int>(b.algorithm));
  });
  return out;
}

const std::vector<Metric>& report_metrics() {
  using R = DecileReportRow;
  static const std::vector<Metric> metrics = {
      {"users", [](const R& r) -> std::optional<double> { return r.users; }},
      {"total_length_km", [](const R& r) -> std::optional<double> { return r.total_length_km; }},
      {"tco_usd", [](const R& r) -> std::optional<double> { return r.tco_usd; }},
      {"annualized_tco_per_user_usd", [](const R& r) { return r.annualized_tco_per_user_usd; }},
      {"monthly_tco_per_user_usd", [](const R& r) { return r.monthly_tco_per_user_usd; }},
      {"total_kg_co2e", [](const R& r) -> std::optional<double> { return r.total_kg_co2e; }},
      {"per_user_kg_co2e", [](const R& r) { return r.per_user_kg_co2e; }},
      {"annualized_per_user_kg_co2e", [](const R& r) { return r.annualized_per_user_kg_co2e; }},
      {"scc_usd", [](const R& r) -> std::optional<double> { return r.scc_usd; }},
      {"scc_per_user_usd", [](const R& r) { return r.scc_per_user_usd; }},
      {"annualized_scc_per_user_usd", [](const R& r) { return r.annualized_scc_per_user_usd; }},
  };
  return metrics;
}

OutputMetadata OutputMetadata::from_books(const cost::CostBook& cost_book,
                                          const lca::EmissionFactorBook& emission_book) {
  return {params::book_hash(cost_book), params::book_hash(emission_book), emission_book.alpha,
          emission_book.p_node_kw};
}

std::string OutputMetadata::comment_line() const {
  return "# fiberplan cost_book=" + cost_book_hash + " emission_book=" + emission_book_hash +
         " alpha=" + format_value(alpha) + " p_node_kw=" + format_value(p_node_kw);
}

std::string format_value(double value) {
  if (value == 0.0) value = 0.0;  // fold -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_value(const std::optional<double>& value) { return value ? format_value(*value) : std::string(); }

std::string report_csv(std::span<const DecileReportRow> rows, const OutputMetadata& meta) {
  if (rows.empty()) throw Error(ErrorCategory::Data, "report", "EmptyReport", "no report rows to write");
  std::string out = meta.comment_line() + "\n";
  out += kReportHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.decile) + ',' + net::to_string(r.level) + ',' + net::to_string(r.algorithm);
    for (const auto& m : report_metrics()) {
      out += ',';
      out += format_value(m.value(r));
    }
    out += '\n';
  }
  return out;
}

std::string design_geojson(std::span<const net::DesignResult> designs,
                           const net::NodeClassification& classification, const OutputMetadata& meta) {
  using nlohmann::json;
  auto position = [](const geo::GeoPoint& p) { return json::array({seven_decimals(p.lon), seven_decimals(p.lat)}); };

  json features = json::array();
  for (const auto& d : designs) {
    const std::string level = net::to_string(d.level);
    const std::string algorithm = net::to_string(d.design.algorithm);
    for (const auto& e : d.design.edges) {
      const auto& a = d.graph.payload(e.u).location;
      const auto& b = d.graph.payload(e.v).location;
      if (!a || !b) continue;
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "LineString"}, {"coordinates", {position(*a), position(*b)}}}},
                          {"properties", {{"level", level}, {"algorithm", algorithm},
                                          {"weight_km", six_significant(e.weight_km)}}}});
    }
    std::vector<bool> connected(d.graph.vertex_count(), false);
    for (auto v : d.design.connected_vertices) connected[v] = true;
    for (net::VertexId v = 0; v < d.graph.vertex_count(); ++v) {
      const auto& p = d.graph.payload(v);
      if (!p.settlement_id || !p.location) continue;
      auto role = classification.roles.find(*p.settlement_id);
      features.push_back(
          {{"type", "Feature"},
           {"geometry", {{"type", "Point"}, {"coordinates", position(*p.location)}}},
           {"properties", {{"id", *p.settlement_id},
                           {"level", level},
                           {"role", role == classification.roles.end() ? "unknown" : net::to_string(role->second)},
                           {"connected", static_cast<bool>(connected[v])}}}});
    }
  }
  json doc = {{"type", "FeatureCollection"},
              {"metadata",
               {{"generator", "fiberplan"},
                {"cost_book", meta.cost_book_hash},
                {"emission_book", meta.emission_book_hash},
                {"alpha", meta.alpha},
                {"p_node_kw", meta.p_node_kw}}},
              {"features", std::move(features)}};
  return doc.dump(1) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCategory::Io, "report", "IoError", "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCategory::Io, "report", "IoError", "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCategory::Io, "report", "IoError", "cannot rename into " + path.string());
  }
}

}  // namespace fiberplan::report
