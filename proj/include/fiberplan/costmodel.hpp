#pragma once

#include <cstddef>
#include <optional>

#include "fiberplan/graph.hpp"

namespace fiberplan::cost {

// Unit prices and operating costs. Defaults are the published empirical values
// for Sub-Saharan fiber deployments; c_splt has no published price and defaults to 0.
struct CostBook {
  // USD per terminal node
  double c_olt = 28'000;
  double c_civil = 120'000;
  double c_rpu = 11'000;
  double c_odf = 18'000;
  double c_splt = 0;
  // USD per km of fiber
  double c_trans = 600;
  double c_inst = 6'000;
  // USD per network per year
  double o_rent = 11'000;
  double o_staff = 150'000;
  double o_pwr = 1'000;
  double o_reg = 60'000;
  double o_acq = 120'000;
  double o_other = 180'000;

  double discount_rate = 0.0833;
  int assessment_years = 30;
  double carbon_price_usd_per_tonne = 75;  // social cost of carbon, 2.5% discounting

  void validate() const;
  double per_node_usd() const noexcept { return c_olt + c_civil + c_rpu + c_odf + c_splt; }
  double per_km_usd() const noexcept { return c_trans + c_inst; }
  double annual_opex_usd() const noexcept { return o_rent + o_staff + o_pwr + o_reg + o_acq + o_other; }
};

struct CostBreakdown {
  double capex_usd = 0;
  double opex_npv_usd = 0;
  double tco_usd = 0;
  double users = 0;
  // Empty when users == 0.
  std::optional<double> tco_per_user_usd;
  std::optional<double> annualized_per_user_usd;
  std::optional<double> monthly_per_user_usd;
};

double capex(std::size_t terminal_nodes, double length_km, const CostBook& book);
double capex(const net::NetworkDesign& design, const CostBook& book);

// Sum over y = 0..n inclusive of annual opex discounted by (1 + r)^y.
double opex_npv(const CostBook& book);

// `opex_share` is the fraction of one network's operating cost carried by this
// design (1 for a whole network).
CostBreakdown tco(std::size_t terminal_nodes, double length_km, const CostBook& book, double users,
                  double opex_share = 1.0);
CostBreakdown tco(const net::NetworkDesign& design, const CostBook& book, double users);

}  // namespace fiberplan::cost
