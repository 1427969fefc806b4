#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "fiberplan/fiberplan.h"

namespace {

const std::string kConfig = FIBERPLAN_TEST_DATA_DIR "/fixture30/scenario.cfg";

std::string scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / (std::string("fiberplan_capi_") + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

struct Handle {
  fp_scenario* ptr = nullptr;
  ~Handle() { fp_scenario_close(ptr); }
};

}  // namespace

TEST_CASE("stateless helpers") {
  CHECK(std::string(fp_version()).size() > 0);
  CHECK(fp_scc_usd(1000, 75) == 75.0);
  CHECK(fp_haversine_km(0, 0, 0, 0) == 0.0);
  CHECK(std::abs(fp_haversine_km(0, 0, 0, 1) - 111.1950802335329) < 1e-9);
}

TEST_CASE("open failures report a structured error") {
  fp_scenario* s = reinterpret_cast<fp_scenario*>(0x1);
  CHECK(fp_scenario_open("/nonexistent/scenario.cfg", &s) == FP_ERR_IO);
  CHECK(s == nullptr);
  const std::string err = fp_last_error();
  CHECK(err.find("\"kind\"") != std::string::npos);
  CHECK(fp_scenario_open(nullptr, &s) == FP_ERR_VALIDATION);
  fp_scenario_close(nullptr);
}

TEST_CASE("scenario lifecycle") {
  Handle h;
  REQUIRE(fp_scenario_open(kConfig.c_str(), &h.ptr) == FP_OK);
  const std::string out = scratch("lifecycle");
  REQUIRE(fp_scenario_set(h.ptr, "output_dir", out.c_str()) == FP_OK);
  REQUIRE(fp_scenario_set(h.ptr, "mc.draws", "25") == FP_OK);
  CHECK(fp_scenario_validate(h.ptr) == FP_OK);

  CHECK(fp_scenario_run(h.ptr, FP_STAGE_VALIDATE) == FP_OK);
  CHECK(fp_scenario_output_count(h.ptr) == 0);

  CHECK(fp_scenario_run(h.ptr, FP_STAGE_REPORT) == FP_OK);
  CHECK(fp_scenario_output_count(h.ptr) == 7);
  CHECK(std::string(fp_scenario_summary(h.ptr)).size() > 0);

  CHECK(fp_scenario_run(h.ptr, FP_STAGE_MC) == FP_OK);
  REQUIRE(fp_scenario_output_count(h.ptr) == 8);
  bool saw_summary = false;
  for (size_t i = 0; i < fp_scenario_output_count(h.ptr); ++i) {
    const std::string path = fp_scenario_output_path(h.ptr, i);
    CHECK(std::filesystem::exists(path));
    saw_summary = saw_summary || path.ends_with("mc_summary.csv");
  }
  CHECK(saw_summary);
  CHECK(fp_scenario_output_path(h.ptr, 99) == nullptr);
  CHECK(std::string(fp_scenario_last_error(h.ptr)).empty());
  std::filesystem::remove_all(out);
}

TEST_CASE("status codes by error category") {
  Handle h;
  REQUIRE(fp_scenario_open(kConfig.c_str(), &h.ptr) == FP_OK);
  CHECK(fp_scenario_set(h.ptr, "no_such_key", "1") == FP_ERR_VALIDATION);
  CHECK(std::string(fp_scenario_last_error(h.ptr)).find("UnknownConfigKey") != std::string::npos);

  REQUIRE(fp_scenario_set(h.ptr, "adoption_rate", "2") == FP_OK);
  const std::string out = scratch("status");
  REQUIRE(fp_scenario_set(h.ptr, "output_dir", out.c_str()) == FP_OK);
  CHECK(fp_scenario_run(h.ptr, FP_STAGE_REPORT) == FP_ERR_VALIDATION);
  CHECK_FALSE(std::filesystem::exists(out));

  REQUIRE(fp_scenario_set(h.ptr, "adoption_rate", "0.5") == FP_OK);
  const std::string bad = FIBERPLAN_TEST_DATA_DIR "/bad/duplicate_settlements.csv";
  REQUIRE(fp_scenario_set(h.ptr, "settlements", bad.c_str()) == FP_OK);
  CHECK(fp_scenario_run(h.ptr, FP_STAGE_DESIGN) == FP_ERR_DATA);
  CHECK(std::string(fp_scenario_last_error(h.ptr)).find("DuplicateId") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(fp_scenario_run(nullptr, FP_STAGE_DESIGN) == FP_ERR_VALIDATION);
}
