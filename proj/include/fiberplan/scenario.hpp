#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiberplan/costmodel.hpp"
#include "fiberplan/geodata.hpp"
#include "fiberplan/lca.hpp"
#include "fiberplan/montecarlo.hpp"
#include "fiberplan/params.hpp"
#include "fiberplan/pipeline.hpp"

namespace fiberplan::scenario {

struct ScenarioConfig {
  std::filesystem::path settlements;
  geo::SettlementFormat settlements_format = geo::SettlementFormat::Csv;
  std::filesystem::path areas;
  std::filesystem::path fiber;
  std::optional<std::filesystem::path> roads;
  std::filesystem::path output_dir = "out";

  pipeline::PlanParameters plan;
  cost::CostBook cost;
  lca::EmissionFactorBook lca;
  std::optional<mc::McConfig> mc;
};

// Relative paths resolve against `base_dir`. Unknown keys raise UnknownConfigKey.
ScenarioConfig scenario_from_key_values(const params::KeyValueFile& file, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Applies one `key = value` setting on top of an existing config (CLI overrides
// use the same keys as the file). Relative paths resolve against `base_dir`.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir);

// Checks numeric invariants and that every referenced input exists. No I/O besides stat.
void validate(const ScenarioConfig& config);

enum class Stage { Validate, Design, Report, MonteCarlo };

struct RunOutcome {
  std::vector<std::filesystem::path> written;
  std::string summary;  // human readable, one screen
};

// validate: parse every input, write nothing.
// design:   demand.csv, flags.csv, design_<level>_<algorithm>.geojson
// report:   design outputs + report.csv
// mc:       report outputs + mc_summary.csv
RunOutcome run(const ScenarioConfig& config, Stage stage);

}  // namespace fiberplan::scenario
