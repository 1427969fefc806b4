#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fiberplan/graph.hpp"

namespace fiberplan::lca {

// Non-fiber equipment installed once per terminal node.
struct Material {
  std::string name;
  double mass_kg = 0;       // per node
  double cf_per_kg = 0;     // manufacturing, kg CO2e per kg
  double cf_recycling = 0;  // open-loop end-of-life, kg CO2e per kg
};

std::vector<Material> default_materials();

// Emission factors and power figures, all in kg CO2e unless noted.
struct EmissionFactorBook {
  double cable_kg_per_km = 247;
  double cf_glass_per_kg = 1.403;
  double cf_cable_recycling = 2.3;  // per kg of cable
  std::vector<Material> materials = default_materials();

  double cf_shipping = 0.3234;  // per kg of shipped equipment
  double cf_vehicle = 0.3234;   // per kg*km of overland haulage

  double trench_fraction = 0.01;
  double trench_hours_per_km = 1;
  double fuel_liters_per_hour = 24.33;
  double cf_diesel = 2.68;  // per liter

  double p_node_kw = 0;
  double p_rn_kw = 1;
  double p_tu_kw = 0.5;
  double alpha = 1.5;  // overhead multiplier on terminal power
  double cf_electricity_per_kwh = 0.1934;
  double operating_hours_per_year = 8'760;
  int lifetime_years = 30;

  void validate() const;
  double material_mass_per_node_kg() const noexcept;
};

struct EmissionsBreakdown {
  double mfg_kg = 0;
  double trans_kg = 0;
  double constr_kg = 0;
  double ops_kg = 0;
  double eolt_kg = 0;
  double total_kg = 0;
  double users = 0;
  std::optional<double> per_user_kg;             // empty when users == 0
  std::optional<double> annualized_per_user_kg;  // empty when users == 0
};

double fiber_mfg_emissions(double d_km, const EmissionFactorBook& book);
double nonfiber_mfg_emissions(std::size_t node_count, const EmissionFactorBook& book);

double transport_emissions(double d_km, std::size_t node_count, double shipping_mass_kg,
                           const EmissionFactorBook& book);
// Shipped mass of a design: its cable plus the per-node equipment.
double shipping_mass_kg(double d_km, std::size_t node_count, const EmissionFactorBook& book);

double construction_emissions(double d_km, const EmissionFactorBook& book);

// Power drawn per user, in kW.
double power_per_user_kw(double n_rn_users, double n_tu_users, const EmissionFactorBook& book);
// Hourly emission rate per user.
double operations_rate_kg_per_hour(double n_rn_users, double n_tu_users, const EmissionFactorBook& book);
// Lifetime operating emissions per user. Throws ZeroUsers.
double operations_emissions(double n_rn_users, double n_tu_users, const EmissionFactorBook& book);

double eolt_emissions(double d_km, std::size_t node_count, const EmissionFactorBook& book);

EmissionsBreakdown total_emissions(double d_km, std::size_t node_count, double users,
                                   const EmissionFactorBook& book);
EmissionsBreakdown total_emissions(const net::NetworkDesign& design, double users,
                                   const EmissionFactorBook& book);

}  // namespace fiberplan::lca
