#include <doctest.h>

#include <string>

#include "fiberplan/error.hpp"
#include "fiberplan/params.hpp"

using namespace fiberplan;
using namespace fiberplan::params;

namespace {

std::string error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

}  // namespace

TEST_CASE("key-value parsing") {
  const auto kv = parse_key_values("# comment\n a = 1 \n\nb=two words # trailing\n");
  REQUIRE(kv.entries.size() == 2);
  CHECK(kv.entries[0] == std::pair<std::string, std::string>{"a", "1"});
  CHECK(*kv.find("b") == "two words");
  CHECK(kv.find("c") == nullptr);
  CHECK(error_kind([] { parse_key_values("a = 1\na = 2\n"); }) == "DuplicateKey");
  CHECK(error_kind([] { parse_key_values("just text\n"); }) == "MalformedConfig");
}

TEST_CASE("parameter access") {
  cost::CostBook c;
  lca::EmissionFactorBook l;
  CHECK(get_parameter("cost.c_olt", c, l) == 28'000);
  CHECK(get_parameter("lca.item.steel.cf_recycling", c, l) == 0.9847);
  set_parameter("cost.c_olt", 1.5, c, l);
  CHECK(c.c_olt == 1.5);
  set_parameter("cost.assessment_years", 19.6, c, l);
  CHECK(c.assessment_years == 20);
  set_parameter("lca.item.pcb.mass_kg", 4, c, l);
  CHECK(l.materials[0].mass_kg == 4);
  CHECK(error_kind([&] { set_parameter("lca.item.copper.mass_kg", 4, c, l); }) == "UnknownParameterKey");
  set_parameter("lca.item.copper.mass_kg", 4, c, l, true);
  CHECK(l.materials.back().name == "copper");
  CHECK(error_kind([&] { set_parameter("cost.bogus", 1, c, l); }) == "UnknownParameterKey");

  for (const auto& key : parameter_keys(c, l)) {
    CHECK(has_parameter(key, c, l));
  }
}

TEST_CASE("book hashes are stable and sensitive") {
  const cost::CostBook c;
  CHECK(book_hash(c) == book_hash(cost::CostBook{}));
  CHECK(book_hash(c).size() == 16);
  cost::CostBook other;
  other.c_inst += 1e-9;
  CHECK(book_hash(other) != book_hash(c));
  CHECK(canonical_text(c).find("c_olt=28000\n") != std::string::npos);
}

TEST_CASE("number parsing") {
  CHECK(parse_number(" 1e3 ", "x") == 1000);
  CHECK(error_kind([] { parse_number("1e3x", "x"); }) != "none");
  CHECK(error_kind([] { parse_number("", "x"); }) != "none");
}
