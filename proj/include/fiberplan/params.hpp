#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fiberplan/costmodel.hpp"
#include "fiberplan/lca.hpp"

namespace fiberplan::params {

// Flat `key = value` text with '#' comments; keys are unique.
struct KeyValueFile {
  std::vector<std::pair<std::string, std::string>> entries;  // file order
  std::string source;

  const std::string* find(std::string_view key) const;
};

KeyValueFile parse_key_values(std::string_view text, std::string_view source = "<config>");
KeyValueFile load_key_values(const std::filesystem::path& path);

// Parameter keys are "cost.<field>" and "lca.<field>", with per-material keys
// "lca.item.<name>.mass_kg|cf|cf_recycling".
std::vector<std::string> parameter_keys(const cost::CostBook& cost, const lca::EmissionFactorBook& lca);
bool has_parameter(std::string_view key, const cost::CostBook& cost, const lca::EmissionFactorBook& lca);
double get_parameter(std::string_view key, const cost::CostBook& cost, const lca::EmissionFactorBook& lca);

// Throws UnknownParameterKey. Integer fields round to the nearest integer.
// With `allow_new_items`, an unknown material name appends a zeroed material first.
void set_parameter(std::string_view key, double value, cost::CostBook& cost, lca::EmissionFactorBook& lca,
                   bool allow_new_items = false);

// Canonical "key=value" listing (sorted, %.17g) and its FNV-1a 64-bit digest in hex.
std::string canonical_text(const cost::CostBook& book);
std::string canonical_text(const lca::EmissionFactorBook& book);
std::string book_hash(const cost::CostBook& book);
std::string book_hash(const lca::EmissionFactorBook& book);

double parse_number(std::string_view text, std::string_view where);

}  // namespace fiberplan::params
