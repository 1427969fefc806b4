#include "fiberplan/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "fiberplan/error.hpp"

namespace fiberplan::scenario {

namespace {

[[noreturn]] void invalid(std::string kind, const std::string& message) {
  throw Error(ErrorCategory::Validation, "cli", std::move(kind), message);
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  return p.is_absolute() ? p : base_dir / p;
}

std::uint64_t parse_count(std::string_view value, std::string_view key) {
  const double v = params::parse_number(value, key);
  if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    invalid("MalformedValue", std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<net::Method> parse_methods(std::string_view value) {
  if (value == "mst") return {net::Method::Mst};
  if (value == "pcst") return {net::Method::Pcst};
  if (value == "both") return {net::Method::Mst, net::Method::Pcst};
  invalid("MalformedValue", "algorithm must be mst, pcst or both");
}

mc::McConfig& mc_of(ScenarioConfig& config) {
  if (!config.mc) config.mc.emplace();
  return *config.mc;
}

std::string slug(net::Level level, net::Algorithm algorithm) {
  std::string a = net::to_string(algorithm);
  std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return std::tolower(c); });
  return "design_" + net::to_string(level) + "_" + a + ".geojson";
}

std::string summary_text(const pipeline::Plan& plan, const std::vector<report::DecileReportRow>* rows) {
  std::ostringstream out;
  std::size_t connected = 0, excluded = 0;
  for (const auto& d : plan.designs) {
    connected += d.result.design.terminal_node_count;
    excluded += d.result.design.excluded_terminals.size();
  }
  out << "subregions " << plan.demand.size() << ", regions " << plan.classification.regions.size() << ", designs "
      << plan.designs.size() << " (" << connected << " terminals connected, " << excluded << " excluded), flags "
      << plan.flags.size() << "\n";
  if (!rows) return out.str();
  char line[160];
  std::snprintf(line, sizeof line, "%-6s %-8s %-8s %12s %12s %14s %14s\n", "decile", "level", "algo", "users",
                "length_km", "tco_usd", "kg_co2e");
  out << line;
  for (const auto& r : *rows) {
    std::snprintf(line, sizeof line, "%-6d %-8s %-8s %12.6g %12.6g %14.6g %14.6g\n", r.decile,
                  net::to_string(r.level).c_str(), net::to_string(r.algorithm).c_str(), r.users, r.total_length_km,
                  r.tco_usd, r.total_kg_co2e);
    out << line;
  }
  return out.str();
}

pipeline::PlanInputs load_inputs(const ScenarioConfig& config) {
  pipeline::PlanInputs in;
  in.settlements = geo::load_settlements(config.settlements, config.settlements_format);
  in.areas = demand::load_area_table(config.areas);
  in.fiber = geo::load_fiber_lines(config.fiber);
  if (config.roads) in.roads = geo::load_road_graph(*config.roads);
  return in;
}

}  // namespace

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir) {
  if (key == "settlements") {
    config.settlements = resolve(value, base_dir);
    config.settlements_format = geo::settlement_format_for(config.settlements);
  } else if (key == "settlements_format") {
    if (value == "csv") config.settlements_format = geo::SettlementFormat::Csv;
    else if (value == "geojson") config.settlements_format = geo::SettlementFormat::GeoJson;
    else invalid("MalformedValue", "settlements_format must be csv or geojson");
  } else if (key == "areas") {
    config.areas = resolve(value, base_dir);
  } else if (key == "fiber") {
    config.fiber = resolve(value, base_dir);
  } else if (key == "roads") {
    config.roads = resolve(value, base_dir);
  } else if (key == "output_dir") {
    config.output_dir = resolve(value, base_dir);
  } else if (key == "adoption_rate") {
    config.plan.adoption.adoption_rate = params::parse_number(value, key);
  } else if (key == "min_density") {
    config.plan.adoption.min_density_per_km2 = params::parse_number(value, key);
  } else if (key == "buffer_km") {
    config.plan.buffer_km = params::parse_number(value, key);
  } else if (key == "main_settlement_threshold") {
    config.plan.main_settlement_threshold = parse_count(value, key);
  } else if (key == "snap_radius_km") {
    config.plan.snap_radius_km = params::parse_number(value, key);
  } else if (key == "prize_scale") {
    config.plan.prize_scale = params::parse_number(value, key);
  } else if (key == "algorithm") {
    config.plan.methods = parse_methods(value);
  } else if (key == "mc.draws") {
    mc_of(config).draws = parse_count(value, key);
  } else if (key == "mc.seed") {
    mc_of(config).seed = parse_count(value, key);
  } else if (key.starts_with("mc.")) {
    auto& mc = mc_of(config);
    const std::string param(key.substr(3));
    auto dist = mc::Distribution::parse(value);
    auto it = std::find_if(mc.distributions.begin(), mc.distributions.end(),
                           [&](const auto& entry) { return entry.first == param; });
    if (it != mc.distributions.end()) {
      it->second = dist;
    } else {
      mc.distributions.emplace_back(param, dist);
    }
  } else if (key.starts_with("cost.") || key.starts_with("lca.")) {
    const double v = params::parse_number(value, key);
    if (!params::has_parameter(key, config.cost, config.lca) && !key.starts_with("lca.item.")) {
      invalid("UnknownConfigKey", "unknown parameter '" + std::string(key) + "'");
    }
    params::set_parameter(key, v, config.cost, config.lca, true);
  } else {
    invalid("UnknownConfigKey", "unknown configuration key '" + std::string(key) + "'");
  }
}

ScenarioConfig scenario_from_key_values(const params::KeyValueFile& file, const std::filesystem::path& base_dir) {
  ScenarioConfig config;
  config.output_dir = base_dir / "out";
  for (const auto& [key, value] : file.entries) {
    try {
      apply_setting(config, key, value, base_dir);
    } catch (const Error& e) {
      throw Error(e.category(), e.module(), e.kind(), file.source + ": " + key + ": " + e.what());
    }
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  const auto file = params::load_key_values(path);
  return scenario_from_key_values(file, path.parent_path());
}

void validate(const ScenarioConfig& config) {
  config.plan.validate();
  config.cost.validate();
  config.lca.validate();
  if (config.mc) config.mc->validate(config.cost, config.lca);

  auto require = [](const std::filesystem::path& p, const char* what) {
    if (p.empty()) invalid("MissingInput", std::string(what) + " path is not set");
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) {
      invalid("MissingInput", std::string(what) + " file not found: " + p.string());
    }
  };
  require(config.settlements, "settlements");
  require(config.areas, "areas");
  require(config.fiber, "fiber");
  const bool pcst = std::find(config.plan.methods.begin(), config.plan.methods.end(), net::Method::Pcst) !=
                    config.plan.methods.end();
  if (pcst) {
    if (!config.roads) invalid("MissingInput", "roads path is required for the pcst algorithm");
    require(*config.roads, "roads");
  } else if (config.roads) {
    require(*config.roads, "roads");
  }
}

RunOutcome run(const ScenarioConfig& config, Stage stage) {
  validate(config);
  const auto inputs = load_inputs(config);

  RunOutcome outcome;
  if (stage == Stage::Validate) {
    // Exercise the demand and classification stages without writing anything.
    const auto subregions = demand::aggregate_subregions(inputs.settlements, inputs.areas);
    (void)demand::assign_deciles(subregions, config.plan.adoption);
    (void)net::classify_nodes(inputs.settlements, inputs.fiber, config.plan.buffer_km,
                              config.plan.main_settlement_threshold);
    outcome.summary = "ok: " + std::to_string(inputs.settlements.size()) + " settlements, " +
                      std::to_string(inputs.areas.size()) + " subregions\n";
    return outcome;
  }

  const auto plan = pipeline::design_plan(inputs, config.plan);
  const auto meta = report::OutputMetadata::from_books(config.cost, config.lca);

  std::map<std::filesystem::path, std::string> files;
  files[config.output_dir / "demand.csv"] = demand::demand_to_csv(plan.demand);
  {
    std::string flags = "kind,id\n";
    for (const auto& f : plan.flags) flags += pipeline::to_string(f.kind) + "," + f.id + "\n";
    files[config.output_dir / "flags.csv"] = flags;
  }
  std::map<std::string, std::vector<net::DesignResult>> layers;
  for (const auto& d : plan.designs) layers[slug(d.result.level, d.result.design.algorithm)].push_back(d.result);
  for (const auto& [name, designs] : layers) {
    files[config.output_dir / name] = report::design_geojson(designs, plan.classification, meta);
  }

  std::vector<report::DecileReportRow> rows;
  if (stage == Stage::Report || stage == Stage::MonteCarlo) {
    rows = pipeline::price_plan(plan, config.cost, config.lca);
    files[config.output_dir / "report.csv"] = report::report_csv(rows, meta);
  }
  if (stage == Stage::MonteCarlo) {
    const mc::McConfig mc_config = config.mc.value_or(mc::McConfig{});
    const auto result = mc::monte_carlo(plan.shares, plan.demand, config.cost, config.lca, mc_config);
    files[config.output_dir / "mc_summary.csv"] = mc::mc_summary_csv(result, meta);
  }

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCategory::Io, "cli", "IoError", "cannot create " + config.output_dir.string());
  for (const auto& [path, content] : files) {
    report::write_file_atomic(path, content);
    outcome.written.push_back(path);
  }
  outcome.summary = summary_text(plan, rows.empty() ? nullptr : &rows);
  return outcome;
}

}  // namespace fiberplan::scenario
