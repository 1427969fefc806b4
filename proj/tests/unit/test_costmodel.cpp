#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "fiberplan/costmodel.hpp"
#include "fiberplan/error.hpp"

using namespace fiberplan;
using namespace fiberplan::cost;

namespace {

std::string error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

CostBook without_opex() {
  CostBook b;
  b.o_rent = b.o_staff = b.o_pwr = b.o_reg = b.o_acq = b.o_other = 0;
  return b;
}

}  // namespace

TEST_CASE("capital cost of one node and ten km") {
  CostBook book;
  CHECK(book.c_splt == 0);
  CHECK(capex(1, 10, book) == 243'000.0);
  CHECK(capex(0, 0, book) == 0.0);

  net::NetworkDesign d;
  d.terminal_node_count = 1;
  d.total_length_km = 10;
  CHECK(capex(d, book) == 243'000.0);
}

TEST_CASE("operating cost present value") {
  CostBook book;
  CHECK(book.annual_opex_usd() == 522'000.0);
  // Closed-form annuity factor sum_{y=0}^{30} 1.0833^-y computed independently.
  CHECK(std::abs(opex_npv(book) - 6'220'225.509492872) < 1e-6);

  book.discount_rate = 0;
  CHECK(opex_npv(book) == 31 * 522'000.0);

  CHECK(opex_npv(without_opex()) == 0.0);
}

TEST_CASE("total cost of ownership per user") {
  const auto book = without_opex();
  const auto b = tco(1, 10, book, 1000);
  CHECK(b.capex_usd == 243'000);
  CHECK(b.tco_usd == 243'000);
  REQUIRE(b.annualized_per_user_usd);
  CHECK(std::abs(*b.annualized_per_user_usd - 8.10) < 1e-12);
  CHECK(std::abs(*b.monthly_per_user_usd - 8.10 / 12) < 1e-12);
  CHECK(*b.tco_per_user_usd == 243.0);

  const auto none = tco(1, 10, book, 0);
  CHECK_FALSE(none.tco_per_user_usd);
  CHECK_FALSE(none.annualized_per_user_usd);
  CHECK_FALSE(none.monthly_per_user_usd);
  CHECK(none.tco_usd == 243'000);

  CostBook full;
  const auto half = tco(2, 0, full, 10, 0.5);
  CHECK(std::abs(half.opex_npv_usd - 0.5 * opex_npv(full)) < 1e-6);
  CHECK(half.tco_usd == half.capex_usd + half.opex_npv_usd);
}

TEST_CASE("cost model properties") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> nodes(0, 200);
  std::uniform_real_distribution<double> km(0, 5000), users(1, 1e6);
  CostBook book;
  for (int i = 0; i < 1000; ++i) {
    const auto n = nodes(rng);
    const double d = km(rng), u = users(rng);
    REQUIRE(capex(n, d, book) >= 0);
    REQUIRE(capex(n, d + 1, book) > capex(n, d, book));
    REQUIRE(capex(n + 1, d, book) > capex(n, d, book));
    const auto b = tco(n, d, book, u);
    REQUIRE(b.tco_usd == b.capex_usd + b.opex_npv_usd);
    REQUIRE(std::abs(*b.tco_per_user_usd * u - b.tco_usd) <= 1e-9 * b.tco_usd);
  }
  // A higher discount rate shrinks the present value.
  CostBook cheap = book;
  cheap.discount_rate = 0.12;
  CHECK(opex_npv(cheap) < opex_npv(book));
}

TEST_CASE("cost book validation") {
  CostBook b;
  CHECK_NOTHROW(b.validate());
  b.c_olt = -1;
  CHECK(error_kind([&] { b.validate(); }) != "none");
  b = CostBook{};
  b.assessment_years = 0;
  CHECK(error_kind([&] { b.validate(); }) != "none");
  b = CostBook{};
  b.discount_rate = -1.5;
  CHECK(error_kind([&] { b.validate(); }) != "none");
}
