#include "fiberplan/lca.hpp"

#include <cmath>

#include "fiberplan/error.hpp"

namespace fiberplan::lca {

std::vector<Material> default_materials() {
  return {
      {"pcb", 3, 18.76, 18.6},
      {"plastics", 20, 3.413, 2.3},
      {"steel", 15, 19.4, 0.9847},
  };
}

void EmissionFactorBook::validate() const {
  auto check = [](double v, const std::string& name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCategory::Validation, "lca", "InvalidEmissionBook", name + " must be finite and non-negative");
    }
  };
  check(cable_kg_per_km, "cable_kg_per_km");
  check(cf_glass_per_kg, "cf_glass_per_kg");
  check(cf_cable_recycling, "cf_cable_recycling");
  for (const auto& m : materials) {
    check(m.mass_kg, "item." + m.name + ".mass_kg");
    check(m.cf_per_kg, "item." + m.name + ".cf");
    check(m.cf_recycling, "item." + m.name + ".cf_recycling");
  }
  check(cf_shipping, "cf_shipping");
  check(cf_vehicle, "cf_vehicle");
  check(trench_fraction, "trench_fraction");
  if (trench_fraction > 1.0) {
    throw Error(ErrorCategory::Validation, "lca", "InvalidEmissionBook", "trench_fraction must lie in [0, 1]");
  }
  check(trench_hours_per_km, "trench_hours_per_km");
  check(fuel_liters_per_hour, "fuel_liters_per_hour");
  check(cf_diesel, "cf_diesel");
  check(p_node_kw, "p_node_kw");
  check(p_rn_kw, "p_rn_kw");
  check(p_tu_kw, "p_tu_kw");
  check(alpha, "alpha");
  check(cf_electricity_per_kwh, "cf_electricity_per_kwh");
  check(operating_hours_per_year, "operating_hours_per_year");
  if (lifetime_years < 1) {
    throw Error(ErrorCategory::Validation, "lca", "InvalidEmissionBook", "lifetime_years must be >= 1");
  }
}

double EmissionFactorBook::material_mass_per_node_kg() const noexcept {
  double total = 0.0;
  for (const auto& m : materials) total += m.mass_kg;
  return total;
}

double fiber_mfg_emissions(double d_km, const EmissionFactorBook& book) {
  return d_km * book.cable_kg_per_km * book.cf_glass_per_kg;
}

double nonfiber_mfg_emissions(std::size_t node_count, const EmissionFactorBook& book) {
  double per_node = 0.0;
  for (const auto& m : book.materials) per_node += m.mass_kg * m.cf_per_kg;
  return static_cast<double>(node_count) * per_node;
}

double shipping_mass_kg(double d_km, std::size_t node_count, const EmissionFactorBook& book) {
  return d_km * book.cable_kg_per_km + static_cast<double>(node_count) * book.material_mass_per_node_kg();
}

double transport_emissions(double d_km, std::size_t node_count, double shipping_mass,
                           const EmissionFactorBook& book) {
  const double international = shipping_mass * book.cf_shipping;
  double overland = 0.0;
  for (const auto& m : book.materials) overland += m.mass_kg * d_km * book.cf_vehicle;
  return international + static_cast<double>(node_count) * overland;
}

double construction_emissions(double d_km, const EmissionFactorBook& book) {
  const double trench_km = d_km * book.trench_fraction;
  const double hours = book.trench_hours_per_km * trench_km;
  const double fuel_liters = hours * book.fuel_liters_per_hour;
  return book.cf_diesel * fuel_liters;
}

double power_per_user_kw(double n_rn_users, double n_tu_users, const EmissionFactorBook& book) {
  if (!(n_rn_users > 0.0) || !(n_tu_users > 0.0)) {
    throw Error(ErrorCategory::Data, "lca", "ZeroUsers", "users sharing a node must be positive");
  }
  return book.p_node_kw + book.p_rn_kw / n_rn_users + book.alpha * (book.p_tu_kw / n_tu_users);
}

double operations_rate_kg_per_hour(double n_rn_users, double n_tu_users, const EmissionFactorBook& book) {
  return power_per_user_kw(n_rn_users, n_tu_users, book) * book.cf_electricity_per_kwh;
}

double operations_emissions(double n_rn_users, double n_tu_users, const EmissionFactorBook& book) {
  return operations_rate_kg_per_hour(n_rn_users, n_tu_users, book) * book.operating_hours_per_year *
         book.lifetime_years;
}

double eolt_emissions(double d_km, std::size_t node_count, const EmissionFactorBook& book) {
  const double fiber = d_km * book.cable_kg_per_km * book.cf_cable_recycling;
  double per_node = 0.0;
  for (const auto& m : book.materials) per_node += m.mass_kg * m.cf_recycling;
  return fiber + static_cast<double>(node_count) * per_node;
}

EmissionsBreakdown total_emissions(double d_km, std::size_t node_count, double users,
                                   const EmissionFactorBook& book) {
  EmissionsBreakdown out;
  out.users = users;
  out.mfg_kg = fiber_mfg_emissions(d_km, book) + nonfiber_mfg_emissions(node_count, book);
  out.trans_kg = transport_emissions(d_km, node_count, shipping_mass_kg(d_km, node_count, book), book);
  out.constr_kg = construction_emissions(d_km, book);
  if (node_count > 0) {
    if (users > 0.0) {
      // Users are shared evenly between the design's nodes.
      const double per_node = users / static_cast<double>(node_count);
      out.ops_kg = users * operations_emissions(per_node, per_node, book);
    } else {
      // Idle equipment still draws its node power.
      out.ops_kg = static_cast<double>(node_count) * (book.p_rn_kw + book.alpha * book.p_tu_kw) *
                   book.cf_electricity_per_kwh * book.operating_hours_per_year * book.lifetime_years;
    }
  }
  out.eolt_kg = eolt_emissions(d_km, node_count, book);
  out.total_kg = out.mfg_kg + out.trans_kg + out.constr_kg + out.ops_kg + out.eolt_kg;
  if (users > 0.0) {
    out.per_user_kg = out.total_kg / users;
    out.annualized_per_user_kg = *out.per_user_kg / book.lifetime_years;
  }
  return out;
}

EmissionsBreakdown total_emissions(const net::NetworkDesign& design, double users,
                                   const EmissionFactorBook& book) {
  return total_emissions(design.total_length_km, design.terminal_node_count, users, book);
}

}  // namespace fiberplan::lca
