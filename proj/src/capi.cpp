#include "fiberplan/fiberplan.h"

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fiberplan/error.hpp"
#include "fiberplan/report.hpp"
#include "fiberplan/scenario.hpp"

struct fp_scenario {
  fiberplan::scenario::ScenarioConfig config;
  std::string summary;
  std::vector<std::string> outputs;
  std::string last_error;
};

namespace {

thread_local std::string g_last_error;

// Runs `body`, converting exceptions into a status and a JSON error record.
template <typename Body>
fp_status guarded(std::string& error_slot, Body&& body) {
  try {
    body();
    error_slot.clear();
    return FP_OK;
  } catch (const fiberplan::Error& e) {
    error_slot = e.to_json();
    return static_cast<fp_status>(fiberplan::exit_code(e.category()));
  } catch (const std::exception& e) {
    error_slot = nlohmann::json{{"module", "internal"}, {"kind", "Exception"}, {"message", e.what()}}.dump();
    return FP_ERR_INTERNAL;
  } catch (...) {
    error_slot = R"({"module":"internal","kind":"Unknown","message":"unknown failure"})";
    return FP_ERR_INTERNAL;
  }
}

fp_status null_handle() {
  g_last_error = R"({"module":"capi","kind":"NullHandle","message":"scenario handle is NULL"})";
  return FP_ERR_VALIDATION;
}

}  // namespace

extern "C" {

const char* fp_version(void) { return "0.1.0"; }

fp_status fp_scenario_open(const char* config_path, fp_scenario** out) {
  if (out == nullptr) return null_handle();
  *out = nullptr;
  if (config_path == nullptr) {
    g_last_error = R"({"module":"capi","kind":"NullArgument","message":"config path is NULL"})";
    return FP_ERR_VALIDATION;
  }
  return guarded(g_last_error, [&] {
    auto handle = std::make_unique<fp_scenario>();
    handle->config = fiberplan::scenario::load_scenario(config_path);
    *out = handle.release();
  });
}

fp_status fp_scenario_set(fp_scenario* scenario, const char* key, const char* value) {
  if (scenario == nullptr) return null_handle();
  if (key == nullptr || value == nullptr) {
    scenario->last_error = R"({"module":"capi","kind":"NullArgument","message":"key or value is NULL"})";
    return FP_ERR_VALIDATION;
  }
  return guarded(scenario->last_error, [&] {
    fiberplan::scenario::apply_setting(scenario->config, key, value, std::filesystem::current_path());
  });
}

fp_status fp_scenario_validate(fp_scenario* scenario) {
  if (scenario == nullptr) return null_handle();
  return guarded(scenario->last_error, [&] { fiberplan::scenario::validate(scenario->config); });
}

fp_status fp_scenario_run(fp_scenario* scenario, fp_stage stage) {
  if (scenario == nullptr) return null_handle();
  return guarded(scenario->last_error, [&] {
    using fiberplan::scenario::Stage;
    Stage s = Stage::Validate;
    switch (stage) {
      case FP_STAGE_VALIDATE: s = Stage::Validate; break;
      case FP_STAGE_DESIGN: s = Stage::Design; break;
      case FP_STAGE_REPORT: s = Stage::Report; break;
      case FP_STAGE_MC: s = Stage::MonteCarlo; break;
      default:
        throw fiberplan::Error(fiberplan::ErrorCategory::Validation, "capi", "UnknownStage", "unknown stage");
    }
    auto outcome = fiberplan::scenario::run(scenario->config, s);
    scenario->summary = std::move(outcome.summary);
    scenario->outputs.clear();
    for (const auto& p : outcome.written) scenario->outputs.push_back(p.string());
  });
}

const char* fp_scenario_summary(const fp_scenario* scenario) {
  return scenario ? scenario->summary.c_str() : "";
}

size_t fp_scenario_output_count(const fp_scenario* scenario) { return scenario ? scenario->outputs.size() : 0; }

const char* fp_scenario_output_path(const fp_scenario* scenario, size_t index) {
  if (scenario == nullptr || index >= scenario->outputs.size()) return nullptr;
  return scenario->outputs[index].c_str();
}

const char* fp_scenario_last_error(const fp_scenario* scenario) {
  return scenario ? scenario->last_error.c_str() : g_last_error.c_str();
}

const char* fp_last_error(void) { return g_last_error.c_str(); }

void fp_scenario_close(fp_scenario* scenario) { delete scenario; }

double fp_haversine_km(double lat1, double lon1, double lat2, double lon2) {
  return fiberplan::geo::haversine_km({lat1, lon1}, {lat2, lon2});
}

double fp_scc_usd(double total_kg_co2e, double carbon_price_usd_per_tonne) {
  return fiberplan::report::scc(total_kg_co2e, carbon_price_usd_per_tonne);
}

}  // extern "C"
