#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fiberplan/demand.hpp"
#include "fiberplan/error.hpp"

using namespace fiberplan;
using namespace fiberplan::demand;

namespace {

std::string error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

std::string pad_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "SR%05d", i);
  return buf;
}

}  // namespace

TEST_CASE("population density") {
  CHECK(population_density(0, 100) == 0.0);
  CHECK(population_density(1000, 10) == 100.0);
  CHECK(std::abs(population_density(212'797'965, 77'288) - 2753.3) < 0.1);
  CHECK(error_kind([] { population_density(10, 0); }) == "ZeroArea");
}

TEST_CASE("potential users") {
  CHECK(potential_users(10'000, {0.005, 0}) == 50.0);
  CHECK(potential_users(0, {0.5, 0}) == 0.0);
  CHECK(potential_users(5, {1.0, 10}) == 0.0);
  CHECK(potential_users(10, {1.0, 10}) == 0.0);  // at the threshold nobody is served
  CHECK(potential_users(11, {1.0, 10}) == 11.0);

  // Linear in the adoption rate above the threshold.
  for (double rate : {0.01, 0.1, 0.25, 0.5, 1.0}) CHECK(potential_users(400, {rate, 0}) == 400 * rate);

  CHECK(error_kind([] { AdoptionScenario{0.0, 0}.validate(); }) != "none");
  CHECK(error_kind([] { AdoptionScenario{1.5, 0}.validate(); }) != "none");
  CHECK(error_kind([] { AdoptionScenario{0.5, -1}.validate(); }) != "none");
}

TEST_CASE("users for node") {
  SubregionDemand d;
  d.users_per_km2 = 0;
  d.area_km2 = 50;
  CHECK(users_for_node(d) == 0.0);
  d.users_per_km2 = 2;
  CHECK(users_for_node(d) == 100.0);
}

TEST_CASE("deciles from strictly ordered densities") {
  std::vector<SubregionInput> in;
  for (int i = 1; i <= 10; ++i) in.push_back({pad_id(i), static_cast<std::uint64_t>(i), 1.0});
  const auto out = assign_deciles(in);
  REQUIRE(out.size() == 10);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].decile == static_cast<int>(i) + 1);
    CHECK(out[i].population == 10 - i);
  }
}

TEST_CASE("deciles of uniform density split evenly by id") {
  std::vector<SubregionInput> in;
  for (int i = 20; i >= 1; --i) in.push_back({pad_id(i), 100, 1.0});
  const auto out = assign_deciles(in);
  std::array<int, 11> counts{};
  for (const auto& d : out) ++counts[d.decile];
  for (int k = 1; k <= 10; ++k) CHECK(counts[k] == 2);
  CHECK(out[0].subregion_id == pad_id(1));
  CHECK(out[0].decile == 1);
  CHECK(out[19].subregion_id == pad_id(20));
}

TEST_CASE("remainder goes to the densest deciles") {
  std::vector<SubregionInput> in;
  for (int i = 1; i <= 23; ++i) in.push_back({pad_id(i), static_cast<std::uint64_t>(1000 - i), 1.0});
  const auto out = assign_deciles(in);
  std::array<int, 11> counts{};
  for (const auto& d : out) ++counts[d.decile];
  CHECK(counts[1] == 3);
  CHECK(counts[2] == 3);
  CHECK(counts[3] == 3);
  for (int k = 4; k <= 10; ++k) CHECK(counts[k] == 2);
}

TEST_CASE("decile minima reproduce the published density bands") {
  // Ten subregions per band; each band contains its published minimum density
  // and nine denser members below the next band's minimum.
  const std::array<double, 10> minima{958, 456, 273, 172, 107, 64, 40, 22, 10, 1};
  const std::array<double, 10> ceilings{5000, 957, 455, 272, 171, 106, 63, 39, 21, 9};
  std::vector<SubregionInput> in;
  int next = 0;
  for (std::size_t b = 0; b < minima.size(); ++b) {
    for (int j = 0; j < 10; ++j) {
      const double density = minima[b] + (ceilings[b] - minima[b]) * j / 10.0;
      // area 1000 km2 keeps the population integral for every band value
      in.push_back({pad_id(next++), static_cast<std::uint64_t>(std::llround(density * 1000)), 1000.0});
    }
  }
  const auto out = assign_deciles(in);
  std::array<double, 11> min_density;
  min_density.fill(1e300);
  for (const auto& d : out) min_density[d.decile] = std::min(min_density[d.decile], d.density_per_km2);
  for (std::size_t b = 0; b < minima.size(); ++b) CHECK(min_density[b + 1] == minima[b]);
}

TEST_CASE("published densest decile keeps every person as a user at full adoption") {
  std::vector<SubregionInput> in{{"D1", 212'797'965, 77'288}};
  for (int i = 0; i < 9; ++i) in.push_back({pad_id(i), 1, 1000.0});
  const auto out = assign_deciles(in, {1.0, 0});
  REQUIRE(out[0].subregion_id == "D1");
  CHECK(std::abs(users_for_node(out[0]) - 212'797'965.0) < 1e-6);
}

TEST_CASE("decile partition conserves population and is monotone") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> pop(0, 5'000'000);
  std::uniform_real_distribution<double> area(0.5, 20'000);
  std::vector<SubregionInput> in;
  std::uint64_t total = 0;
  for (int i = 0; i < 10'000; ++i) {
    in.push_back({pad_id(i), pop(rng), area(rng)});
    total += in.back().population;
  }
  const auto out = assign_deciles(in, {0.3, 50});
  REQUIRE(out.size() == in.size());
  std::uint64_t sum = 0;
  for (const auto& d : out) sum += d.population;
  CHECK(sum == total);

  for (std::size_t i = 1; i < out.size(); ++i) {
    REQUIRE(out[i - 1].density_per_km2 >= out[i].density_per_km2);
    REQUIRE(out[i - 1].decile <= out[i].decile);
  }
  for (const auto& d : out) {
    REQUIRE(std::abs(d.density_per_km2 - static_cast<double>(d.population) / d.area_km2) <=
            1e-9 * std::max(1.0, d.density_per_km2));
  }
  CHECK(assign_deciles(in, {0.3, 50})[1234].subregion_id == out[1234].subregion_id);
}

TEST_CASE("decile errors") {
  std::vector<SubregionInput> nine;
  for (int i = 0; i < 9; ++i) nine.push_back({pad_id(i), 1, 1});
  CHECK(error_kind([&] { assign_deciles(nine); }) == "TooFewSubregions");
  nine.push_back({"Z", 1, 0});
  CHECK(error_kind([&] { assign_deciles(nine); }) == "ZeroArea");
}

TEST_CASE("area table and aggregation") {
  std::istringstream in("subregion_id,area_km2\nA,10\nB,2.5\nC,1\n");
  const auto areas = parse_area_table(in);
  REQUIRE(areas.size() == 3);
  CHECK(areas[1].area_km2 == 2.5);

  geo::SettlementSet settlements{{"s1", {0, 0}, 100, "R", "A"}, {"s2", {0, 1}, 50, "R", "A"}, {"s3", {1, 0}, 7, "R", "B"}};
  const auto agg = aggregate_subregions(settlements, areas);
  REQUIRE(agg.size() == 3);
  CHECK(agg[0].population == 150);
  CHECK(agg[1].population == 7);
  CHECK(agg[2].population == 0);

  settlements.push_back({"s4", {1, 1}, 1, "R", "Q"});
  CHECK(error_kind([&] { aggregate_subregions(settlements, areas); }) == "KeyMismatch");
}
