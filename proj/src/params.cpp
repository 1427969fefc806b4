#include "fiberplan/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <sstream>

#include "fiberplan/error.hpp"

namespace fiberplan::params {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void unknown_key(std::string_view key) {
  throw Error(ErrorCategory::Validation, "params", "UnknownParameterKey",
              "no parameter named '" + std::string(key) + "'");
}

struct Field {
  std::function<double(const cost::CostBook&, const lca::EmissionFactorBook&)> get;
  std::function<void(cost::CostBook&, lca::EmissionFactorBook&, double)> set;
};

template <typename Member>
Field cost_field(Member cost::CostBook::*m) {
  return {[m](const cost::CostBook& c, const lca::EmissionFactorBook&) { return static_cast<double>(c.*m); },
          [m](cost::CostBook& c, lca::EmissionFactorBook&, double v) {
            if constexpr (std::is_integral_v<Member>) {
              c.*m = static_cast<Member>(std::llround(v));
            } else {
              c.*m = v;
            }
          }};
}

template <typename Member>
Field lca_field(Member lca::EmissionFactorBook::*m) {
  return {[m](const cost::CostBook&, const lca::EmissionFactorBook& l) { return static_cast<double>(l.*m); },
          [m](cost::CostBook&, lca::EmissionFactorBook& l, double v) {
            if constexpr (std::is_integral_v<Member>) {
              l.*m = static_cast<Member>(std::llround(v));
            } else {
              l.*m = v;
            }
          }};
}

const std::map<std::string, Field, std::less<>>& scalar_fields() {
  static const std::map<std::string, Field, std::less<>> fields = {
      {"cost.c_olt", cost_field(&cost::CostBook::c_olt)},
      {"cost.c_civil", cost_field(&cost::CostBook::c_civil)},
      {"cost.c_rpu", cost_field(&cost::CostBook::c_rpu)},
      {"cost.c_odf", cost_field(&cost::CostBook::c_odf)},
      {"cost.c_splt", cost_field(&cost::CostBook::c_splt)},
      {"cost.c_trans", cost_field(&cost::CostBook::c_trans)},
      {"cost.c_inst", cost_field(&cost::CostBook::c_inst)},
      {"cost.o_rent", cost_field(&cost::CostBook::o_rent)},
      {"cost.o_staff", cost_field(&cost::CostBook::o_staff)},
      {"cost.o_pwr", cost_field(&cost::CostBook::o_pwr)},
      {"cost.o_reg", cost_field(&cost::CostBook::o_reg)},
      {"cost.o_acq", cost_field(&cost::CostBook::o_acq)},
      {"cost.o_other", cost_field(&cost::CostBook::o_other)},
      {"cost.discount_rate", cost_field(&cost::CostBook::discount_rate)},
      {"cost.assessment_years", cost_field(&cost::CostBook::assessment_years)},
      {"cost.carbon_price", cost_field(&cost::CostBook::carbon_price_usd_per_tonne)},
      {"lca.cable_kg_per_km", lca_field(&lca::EmissionFactorBook::cable_kg_per_km)},
      {"lca.cf_glass_per_kg", lca_field(&lca::EmissionFactorBook::cf_glass_per_kg)},
      {"lca.cf_cable_recycling", lca_field(&lca::EmissionFactorBook::cf_cable_recycling)},
      {"lca.cf_shipping", lca_field(&lca::EmissionFactorBook::cf_shipping)},
      {"lca.cf_vehicle", lca_field(&lca::EmissionFactorBook::cf_vehicle)},
      {"lca.trench_fraction", lca_field(&lca::EmissionFactorBook::trench_fraction)},
      {"lca.trench_hours_per_km", lca_field(&lca::EmissionFactorBook::trench_hours_per_km)},
      {"lca.fuel_liters_per_hour", lca_field(&lca::EmissionFactorBook::fuel_liters_per_hour)},
      {"lca.cf_diesel", lca_field(&lca::EmissionFactorBook::cf_diesel)},
      {"lca.p_node_kw", lca_field(&lca::EmissionFactorBook::p_node_kw)},
      {"lca.p_rn_kw", lca_field(&lca::EmissionFactorBook::p_rn_kw)},
      {"lca.p_tu_kw", lca_field(&lca::EmissionFactorBook::p_tu_kw)},
      {"lca.alpha", lca_field(&lca::EmissionFactorBook::alpha)},
      {"lca.cf_electricity_per_kwh", lca_field(&lca::EmissionFactorBook::cf_electricity_per_kwh)},
      {"lca.operating_hours_per_year", lca_field(&lca::EmissionFactorBook::operating_hours_per_year)},
      {"lca.lifetime_years", lca_field(&lca::EmissionFactorBook::lifetime_years)},
  };
  return fields;
}

struct ItemKey {
  std::string name;
  std::string attribute;  // mass_kg | cf | cf_recycling
};

std::optional<ItemKey> parse_item_key(std::string_view key) {
  constexpr std::string_view prefix = "lca.item.";
  if (!key.starts_with(prefix)) return std::nullopt;
  key.remove_prefix(prefix.size());
  const auto dot = key.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  ItemKey out{std::string(key.substr(0, dot)), std::string(key.substr(dot + 1))};
  if (out.attribute != "mass_kg" && out.attribute != "cf" && out.attribute != "cf_recycling") return std::nullopt;
  return out;
}

double* item_slot(lca::Material& m, const std::string& attribute) {
  if (attribute == "mass_kg") return &m.mass_kg;
  if (attribute == "cf") return &m.cf_per_kg;
  return &m.cf_recycling;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string canonical_with_prefix(std::string_view prefix, const cost::CostBook& c,
                                  const lca::EmissionFactorBook& l) {
  std::vector<std::string> lines;
  for (const auto& key : parameter_keys(c, l)) {
    if (key.starts_with(prefix)) lines.push_back(key + "=" + g17(get_parameter(key, c, l)) + "\n");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) out += line;
  return out;
}

}  // namespace

const std::string* KeyValueFile::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

KeyValueFile parse_key_values(std::string_view text, std::string_view source) {
  KeyValueFile out;
  out.source = std::string(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + " line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCategory::Validation, "params", "MalformedConfig", where + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCategory::Validation, "params", "MalformedConfig", where + ": empty key");
    if (out.find(key)) {
      throw Error(ErrorCategory::Validation, "params", "DuplicateKey", where + ": key '" + key + "' repeated");
    }
    out.entries.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValueFile load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Io, "params", "IoError", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str(), path.string());
}

std::vector<std::string> parameter_keys(const cost::CostBook&, const lca::EmissionFactorBook& l) {
  std::vector<std::string> keys;
  for (const auto& [k, f] : scalar_fields()) keys.push_back(k);
  for (const auto& m : l.materials) {
    for (const char* attr : {"mass_kg", "cf", "cf_recycling"}) keys.push_back("lca.item." + m.name + "." + attr);
  }
  return keys;
}

bool has_parameter(std::string_view key, const cost::CostBook&, const lca::EmissionFactorBook& l) {
  if (scalar_fields().contains(key)) return true;
  const auto item = parse_item_key(key);
  return item && std::any_of(l.materials.begin(), l.materials.end(),
                             [&](const lca::Material& m) { return m.name == item->name; });
}

double get_parameter(std::string_view key, const cost::CostBook& c, const lca::EmissionFactorBook& l) {
  if (auto it = scalar_fields().find(key); it != scalar_fields().end()) return it->second.get(c, l);
  if (const auto item = parse_item_key(key)) {
    for (auto m : l.materials) {
      if (m.name == item->name) return *item_slot(m, item->attribute);
    }
  }
  unknown_key(key);
}

void set_parameter(std::string_view key, double value, cost::CostBook& c, lca::EmissionFactorBook& l,
                   bool allow_new_items) {
  if (auto it = scalar_fields().find(key); it != scalar_fields().end()) {
    it->second.set(c, l, value);
    return;
  }
  if (const auto item = parse_item_key(key)) {
    for (auto& m : l.materials) {
      if (m.name == item->name) {
        *item_slot(m, item->attribute) = value;
        return;
      }
    }
    if (allow_new_items) {
      l.materials.push_back({item->name, 0, 0, 0});
      *item_slot(l.materials.back(), item->attribute) = value;
      return;
    }
  }
  unknown_key(key);
}

std::string canonical_text(const cost::CostBook& book) {
  return canonical_with_prefix("cost.", book, lca::EmissionFactorBook{});
}

std::string canonical_text(const lca::EmissionFactorBook& book) {
  return canonical_with_prefix("lca.", cost::CostBook{}, book);
}

std::string book_hash(const cost::CostBook& book) { return fnv1a_hex(canonical_text(book)); }
std::string book_hash(const lca::EmissionFactorBook& book) { return fnv1a_hex(canonical_text(book)); }

double parse_number(std::string_view text, std::string_view where) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCategory::Validation, "params", "MalformedValue",
                std::string(where) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

}  // namespace fiberplan::params
