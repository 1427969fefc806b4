/* C interface to the fiberplan engine. All functions are thread-safe on
 * distinct handles. Strings returned by the library stay valid until the next
 * call on the same handle (or, for handle-less calls, on the same thread). */
#ifndef FIBERPLAN_H
#define FIBERPLAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(FIBERPLAN_BUILDING_LIBRARY)
#define FIBERPLAN_API __attribute__((visibility("default")))
#else
#define FIBERPLAN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fp_scenario fp_scenario;

/* Values double as CLI exit codes. */
typedef enum fp_status {
  FP_OK = 0,
  FP_ERR_INTERNAL = 1,
  FP_ERR_VALIDATION = 2,
  FP_ERR_DATA = 3,
  FP_ERR_SOLVER = 4,
  FP_ERR_IO = 5
} fp_status;

typedef enum fp_stage {
  FP_STAGE_VALIDATE = 0,
  FP_STAGE_DESIGN = 1,
  FP_STAGE_REPORT = 2,
  FP_STAGE_MC = 3
} fp_stage;

FIBERPLAN_API const char* fp_version(void);

/* Loads a scenario config file. On failure *out is NULL and the error is
 * available from fp_last_error(). */
FIBERPLAN_API fp_status fp_scenario_open(const char* config_path, fp_scenario** out);

/* Overrides one config key; relative paths resolve against the working directory. */
FIBERPLAN_API fp_status fp_scenario_set(fp_scenario* scenario, const char* key, const char* value);

/* Checks parameters and input paths without reading data. */
FIBERPLAN_API fp_status fp_scenario_validate(fp_scenario* scenario);

FIBERPLAN_API fp_status fp_scenario_run(fp_scenario* scenario, fp_stage stage);

/* Summary text of the last successful run. */
FIBERPLAN_API const char* fp_scenario_summary(const fp_scenario* scenario);

/* Number of files written by the last run and their paths. */
FIBERPLAN_API size_t fp_scenario_output_count(const fp_scenario* scenario);
FIBERPLAN_API const char* fp_scenario_output_path(const fp_scenario* scenario, size_t index);

/* JSON object {"module","kind","message"} of the last failure, or "" when none. */
FIBERPLAN_API const char* fp_scenario_last_error(const fp_scenario* scenario);
FIBERPLAN_API const char* fp_last_error(void);

FIBERPLAN_API void fp_scenario_close(fp_scenario* scenario);

/* Stateless helpers. */
FIBERPLAN_API double fp_haversine_km(double lat1, double lon1, double lat2, double lon2);
FIBERPLAN_API double fp_scc_usd(double total_kg_co2e, double carbon_price_usd_per_tonne);

#ifdef __cplusplus
}
#endif

#endif /* FIBERPLAN_H */
