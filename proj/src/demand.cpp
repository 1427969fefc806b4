#include "fiberplan/demand.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_set>

#include "fiberplan/error.hpp"

namespace fiberplan::demand {

namespace {

[[noreturn]] void fail(ErrorCategory cat, std::string kind, const std::string& message) {
  throw Error(cat, "demand", std::move(kind), message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void AdoptionScenario::validate() const {
  if (!(adoption_rate > 0.0 && adoption_rate <= 1.0)) {
    fail(ErrorCategory::Validation, "InvalidAdoptionRate", "adoption_rate must lie in (0, 1]");
  }
  if (!(min_density_per_km2 >= 0.0) || !std::isfinite(min_density_per_km2)) {
    fail(ErrorCategory::Validation, "InvalidMinDensity", "min_density must be non-negative");
  }
}

double population_density(std::uint64_t population, double area_km2) {
  if (!(area_km2 > 0.0) || !std::isfinite(area_km2)) {
    fail(ErrorCategory::Data, "ZeroArea", "area must be positive");
  }
  return static_cast<double>(population) / area_km2;
}

double potential_users(double density_per_km2, const AdoptionScenario& scenario) {
  if (density_per_km2 <= scenario.min_density_per_km2) return 0.0;
  return density_per_km2 * scenario.adoption_rate;
}

double users_for_node(const SubregionDemand& subregion) noexcept {
  return subregion.users_per_km2 * subregion.area_km2;
}

std::vector<SubregionDemand> assign_deciles(std::span<const SubregionInput> subregions,
                                            const AdoptionScenario& scenario) {
  scenario.validate();
  if (subregions.size() < static_cast<std::size_t>(kDecileCount)) {
    fail(ErrorCategory::Data, "TooFewSubregions",
         "need at least 10 subregions, got " + std::to_string(subregions.size()));
  }
  std::vector<SubregionDemand> rows;
  rows.reserve(subregions.size());
  for (const auto& s : subregions) {
    if (!(s.area_km2 > 0.0)) fail(ErrorCategory::Data, "ZeroArea", "subregion " + s.subregion_id + " has no area");
    SubregionDemand d;
    d.subregion_id = s.subregion_id;
    d.area_km2 = s.area_km2;
    d.population = s.population;
    d.density_per_km2 = population_density(s.population, s.area_km2);
    d.users_per_km2 = potential_users(d.density_per_km2, scenario);
    rows.push_back(std::move(d));
  }
  std::sort(rows.begin(), rows.end(), [](const SubregionDemand& a, const SubregionDemand& b) {
    if (a.density_per_km2 != b.density_per_km2) return a.density_per_km2 > b.density_per_km2;
    return a.subregion_id < b.subregion_id;
  });

  const std::size_t base = rows.size() / kDecileCount;
  const std::size_t extra = rows.size() % kDecileCount;
  std::size_t pos = 0;
  for (int decile = 1; decile <= kDecileCount; ++decile) {
    const std::size_t size = base + (static_cast<std::size_t>(decile) <= extra ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) rows[pos++].decile = decile;
  }
  return rows;
}

std::vector<AreaRecord> load_area_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Io, "demand", "IoError", "cannot open " + path.string());
  return parse_area_table(in, path.string());
}

std::vector<AreaRecord> parse_area_table(std::istream& in, std::string_view source) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCategory::Data, "MissingColumn", std::string(source) + ": empty file");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (trim(line) != "subregion_id,area_km2") {
    fail(ErrorCategory::Data, "MissingColumn", std::string(source) + ": header must be subregion_id,area_km2");
  }
  std::vector<AreaRecord> out;
  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (text.empty()) continue;
    const std::string where = std::string(source) + " row " + std::to_string(row);
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) fail(ErrorCategory::Data, "MalformedRow", where + ": expected 2 fields");
    AreaRecord rec;
    rec.subregion_id = std::string(trim(text.substr(0, comma)));
    const auto num = trim(text.substr(comma + 1));
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), rec.area_km2);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      fail(ErrorCategory::Data, "MalformedValue", where + ": area '" + std::string(num) + "' is not a number");
    }
    if (!(rec.area_km2 > 0.0) || !std::isfinite(rec.area_km2)) fail(ErrorCategory::Data, "ZeroArea", where + ": area must be positive");
    if (rec.subregion_id.empty()) fail(ErrorCategory::Data, "MissingValue", where + ": empty subregion_id");
    if (!seen.insert(rec.subregion_id).second) fail(ErrorCategory::Data, "DuplicateId", where + ": duplicate subregion " + rec.subregion_id);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SubregionInput> aggregate_subregions(std::span<const geo::Settlement> settlements,
                                                 std::span<const AreaRecord> areas) {
  std::map<std::string, std::size_t> index;
  std::vector<SubregionInput> out;
  out.reserve(areas.size());
  for (const auto& a : areas) {
    index.emplace(a.subregion_id, out.size());
    out.push_back({a.subregion_id, 0, a.area_km2});
  }
  for (const auto& s : settlements) {
    auto it = index.find(s.subregion_id);
    if (it == index.end()) {
      fail(ErrorCategory::Data, "KeyMismatch",
           "settlement " + s.id + " references subregion " + s.subregion_id + " missing from the area table");
    }
    out[it->second].population += s.population;
  }
  return out;
}

std::string demand_to_csv(std::span<const SubregionDemand> rows) {
  std::string out = "subregion_id,area_km2,population,density_per_km2,decile,users_per_km2\n";
  for (const auto& r : rows) {
    out += r.subregion_id + ',' + fmt6(r.area_km2) + ',' + std::to_string(r.population) + ',' +
           fmt6(r.density_per_km2) + ',' + std::to_string(r.decile) + ',' + fmt6(r.users_per_km2) + '\n';
  }
  return out;
}

}  // namespace fiberplan::demand
