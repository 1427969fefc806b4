#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiberplan/geodata.hpp"

namespace fiberplan::demand {

inline constexpr int kDecileCount = 10;

struct AdoptionScenario {
  double adoption_rate = 1.0;         // fraction in (0, 1]
  double min_density_per_km2 = 0.0;   // at or below this density nobody is served

  // Throws Error{Validation} when out of range.
  void validate() const;
};

struct SubregionInput {
  std::string subregion_id;
  std::uint64_t population = 0;
  double area_km2 = 0.0;
};

struct SubregionDemand {
  std::string subregion_id;
  double area_km2 = 0.0;
  std::uint64_t population = 0;
  double density_per_km2 = 0.0;
  int decile = 0;  // 1 = densest, 10 = sparsest
  double users_per_km2 = 0.0;
};

double population_density(std::uint64_t population, double area_km2);

double potential_users(double density_per_km2, const AdoptionScenario& scenario);

double users_for_node(const SubregionDemand& subregion) noexcept;

// Ranks subregions by density (descending, ties by id) and splits them into ten
// equal-count deciles; the first `n % 10` deciles get one extra member.
// Output is in ranked order.
std::vector<SubregionDemand> assign_deciles(std::span<const SubregionInput> subregions,
                                            const AdoptionScenario& scenario = {});

struct AreaRecord {
  std::string subregion_id;
  double area_km2 = 0.0;
};

std::vector<AreaRecord> load_area_table(const std::filesystem::path& path);
std::vector<AreaRecord> parse_area_table(std::istream& in, std::string_view source = "<csv>");

// Sums settlement populations per subregion listed in the area table. Subregions
// without settlements get population 0; a settlement whose subregion has no area
// record raises KeyMismatch.
std::vector<SubregionInput> aggregate_subregions(std::span<const geo::Settlement> settlements,
                                                 std::span<const AreaRecord> areas);

std::string demand_to_csv(std::span<const SubregionDemand> rows);

}  // namespace fiberplan::demand
