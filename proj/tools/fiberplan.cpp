// fiberplan command line: validate | design | report | mc
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fiberplan/fiberplan.h"

namespace {

int fail(fp_status status, const char* error_json) {
  std::cerr << "error: " << error_json << "\n";
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiber-to-the-neighborhood planning engine"};
  app.set_version_flag("--version", std::string(fp_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> algorithm;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> draws;
  std::vector<std::string> settings;

  struct Command {
    const char* name;
    const char* help;
    fp_stage stage;
  };
  const Command commands[] = {
      {"validate", "Check the scenario config and parse every input", FP_STAGE_VALIDATE},
      {"design", "Build network designs (GeoJSON) and the demand table", FP_STAGE_DESIGN},
      {"report", "Design, then price and emit report.csv", FP_STAGE_REPORT},
      {"mc", "Report plus Monte Carlo sensitivity summary", FP_STAGE_MC},
  };
  std::optional<fp_stage> chosen;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "Scenario config file (key = value)")->required();
    sub->add_option("--algorithm", algorithm, "mst, pcst or both")->check(CLI::IsMember({"mst", "pcst", "both"}));
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Monte Carlo seed");
    sub->add_option("--draws", draws, "Monte Carlo draw count");
    sub->add_option("--set", settings, "Override a config key, key=value (repeatable)");
    const fp_stage stage = c.stage;
    sub->callback([&chosen, stage] { chosen = stage; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  fp_scenario* scenario = nullptr;
  if (fp_status s = fp_scenario_open(config_path.c_str(), &scenario); s != FP_OK) {
    return fail(s, fp_last_error());
  }

  // Flags override config keys; --set entries apply first, named flags last.
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& kv : settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: {\"module\":\"cli\",\"kind\":\"MalformedOverride\",\"message\":\"--set expects key=value\"}\n";
      fp_scenario_close(scenario);
      return FP_ERR_VALIDATION;
    }
    overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (algorithm) overrides.emplace_back("algorithm", *algorithm);
  if (out_dir) overrides.emplace_back("output_dir", *out_dir);
  if (seed) overrides.emplace_back("mc.seed", std::to_string(*seed));
  if (draws) overrides.emplace_back("mc.draws", std::to_string(*draws));
  for (const auto& [key, value] : overrides) {
    if (fp_status s = fp_scenario_set(scenario, key.c_str(), value.c_str()); s != FP_OK) {
      const int code = fail(s, fp_scenario_last_error(scenario));
      fp_scenario_close(scenario);
      return code;
    }
  }

  std::cerr << "fiberplan: running " << app.get_subcommands().front()->get_name() << "\n";
  const fp_status status = fp_scenario_run(scenario, *chosen);
  if (status != FP_OK) {
    const int code = fail(status, fp_scenario_last_error(scenario));
    fp_scenario_close(scenario);
    return code;
  }
  std::cout << fp_scenario_summary(scenario);
  for (size_t i = 0; i < fp_scenario_output_count(scenario); ++i) {
    std::cout << "wrote " << fp_scenario_output_path(scenario, i) << "\n";
  }
  fp_scenario_close(scenario);
  return 0;
}
