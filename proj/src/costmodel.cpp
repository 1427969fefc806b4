#include "fiberplan/costmodel.hpp"

#include <cmath>

#include "fiberplan/error.hpp"

namespace fiberplan::cost {

void CostBook::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCategory::Validation, "costmodel", "InvalidCostBook",
                  std::string(name) + " must be finite and non-negative");
    }
  };
  check(c_olt, "c_olt");
  check(c_civil, "c_civil");
  check(c_rpu, "c_rpu");
  check(c_odf, "c_odf");
  check(c_splt, "c_splt");
  check(c_trans, "c_trans");
  check(c_inst, "c_inst");
  check(o_rent, "o_rent");
  check(o_staff, "o_staff");
  check(o_pwr, "o_pwr");
  check(o_reg, "o_reg");
  check(o_acq, "o_acq");
  check(o_other, "o_other");
  check(carbon_price_usd_per_tonne, "carbon_price");
  if (!(discount_rate >= 0.0 && discount_rate < 1.0)) {
    throw Error(ErrorCategory::Validation, "costmodel", "InvalidCostBook", "discount_rate must lie in [0, 1)");
  }
  if (assessment_years < 1) {
    throw Error(ErrorCategory::Validation, "costmodel", "InvalidCostBook", "assessment_years must be >= 1");
  }
}

double capex(std::size_t terminal_nodes, double length_km, const CostBook& book) {
  return static_cast<double>(terminal_nodes) * book.per_node_usd() + length_km * book.per_km_usd();
}

double capex(const net::NetworkDesign& design, const CostBook& book) {
  return capex(design.terminal_node_count, design.total_length_km, book);
}

double opex_npv(const CostBook& book) {
  const double annual = book.annual_opex_usd();
  double total = 0.0;
  double factor = 1.0;
  for (int y = 0; y <= book.assessment_years; ++y) {
    total += annual / factor;
    factor *= 1.0 + book.discount_rate;
  }
  return total;
}

CostBreakdown tco(std::size_t terminal_nodes, double length_km, const CostBook& book, double users,
                  double opex_share) {
  CostBreakdown out;
  out.capex_usd = capex(terminal_nodes, length_km, book);
  out.opex_npv_usd = opex_share == 0.0 ? 0.0 : opex_npv(book) * opex_share;
  out.tco_usd = out.capex_usd + out.opex_npv_usd;
  out.users = users;
  if (users > 0.0) {
    out.tco_per_user_usd = out.tco_usd / users;
    out.annualized_per_user_usd = *out.tco_per_user_usd / book.assessment_years;
    out.monthly_per_user_usd = *out.annualized_per_user_usd / 12.0;
  }
  return out;
}

CostBreakdown tco(const net::NetworkDesign& design, const CostBook& book, double users) {
  return tco(design.terminal_node_count, design.total_length_km, book, users);
}

}  // namespace fiberplan::cost
