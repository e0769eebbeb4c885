/*
 * C interface to the mobmatch solver and pricing mechanism.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an mm_status; on
 * failure mm_last_error() describes the problem for the calling thread.
 * Status values double as process exit codes for the command-line tool.
 * Money crosses the boundary as int64 micro-units (10^-6 of a unit).
 */
#ifndef MOBMATCH_H_
#define MOBMATCH_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(MOBMATCH_BUILDING_LIBRARY)
#define MM_API __attribute__((visibility("default")))
#else
#define MM_API
#endif

typedef enum mm_status {
  MM_OK = 0,
  MM_ERR_INPUT = 2,     /* malformed or out-of-range input, size guard */
  MM_ERR_VIOLATION = 3, /* a checked property does not hold */
  MM_ERR_INTERNAL = 4   /* an identity that must hold by construction failed */
} mm_status;

typedef struct mm_instance mm_instance;
typedef struct mm_solution mm_solution;
typedef struct mm_text mm_text;

typedef struct mm_generator_config {
  uint64_t seed;
  uint32_t travelers;
  uint32_t providers;
  int32_t min_capacity;
  int32_t max_capacity;
  int32_t balanced;
  int64_t min_willingness_units;
  int64_t max_willingness_units;
  int64_t min_cost_units;
  int64_t max_cost_units;
  int32_t theta_steps;
  int32_t delta_steps;
} mm_generator_config;

typedef struct mm_suite_config {
  uint64_t seed;
  uint32_t instances;
  uint32_t max_travelers;
  uint32_t max_providers;
  int32_t max_capacity;
  uint32_t threads; /* 0: hardware concurrency */
} mm_suite_config;

MM_API const char* mm_version(void);
MM_API const char* mm_last_error(void);

/* Text buffers returned by reporting calls. */
MM_API const char* mm_text_data(const mm_text* text);
MM_API size_t mm_text_size(const mm_text* text);
MM_API void mm_text_free(mm_text* text);

/* Instances. mm_instance_load also resolves bundled names ("paper_siv"). */
MM_API mm_status mm_instance_parse(const char* text, size_t length, mm_instance** out);
MM_API mm_status mm_instance_load(const char* path, mm_instance** out);
MM_API void mm_generator_config_init(mm_generator_config* config);
MM_API mm_status mm_instance_generate(const mm_generator_config* config, mm_instance** out);
MM_API mm_status mm_instance_serialize(const mm_instance* instance, mm_text** out);
MM_API size_t mm_instance_travelers(const mm_instance* instance);
MM_API size_t mm_instance_providers(const mm_instance* instance);
MM_API int mm_instance_balanced(const mm_instance* instance);
MM_API void mm_instance_free(mm_instance* instance);

/* Optimal assignment with dual prices and payments. */
MM_API mm_status mm_solve(const mm_instance* instance, mm_solution** out);
/* Exhaustive search; MM_ERR_INPUT when the instance exceeds the guard. The
 * result carries no dual. */
MM_API mm_status mm_oracle(const mm_instance* instance, mm_solution** out);
MM_API int64_t mm_solution_objective_micros(const mm_solution* solution);
/* *provider receives -1 for an unmatched traveler. */
MM_API mm_status mm_solution_match(const mm_solution* solution, size_t traveler,
                                   int64_t* provider);
MM_API int mm_solution_has_dual(const mm_solution* solution);
MM_API mm_status mm_solution_phi_micros(const mm_solution* solution, size_t traveler,
                                        int64_t* phi);
MM_API mm_status mm_solution_psi_micros(const mm_solution* solution, size_t provider,
                                        int64_t* psi);
MM_API mm_status mm_solution_report(const mm_solution* solution, mm_text** out);
MM_API mm_status mm_solution_csv(const mm_solution* solution, mm_text** out);
MM_API void mm_solution_free(mm_solution* solution);

/* Certifies a certificate (match/phi/psi lines). MM_OK when stable,
 * MM_ERR_VIOLATION when not; the report is produced in both cases. */
MM_API mm_status mm_audit(const mm_instance* instance, const char* certificate, size_t length,
                          mm_text** report);

/* Runs the pricing mechanism. `reports` may be NULL; agents without a report
 * line report truthfully. */
MM_API mm_status mm_mechanism(const mm_instance* instance, const char* reports, size_t length,
                              mm_text** out);

MM_API void mm_suite_config_init(mm_suite_config* config);
/* CSV rows per instance; MM_ERR_VIOLATION when any row fails. */
MM_API mm_status mm_verify_participation(const mm_suite_config* config, mm_text** csv,
                                         size_t* violations);
MM_API mm_status mm_sweep_truthfulness(const mm_suite_config* config, int32_t grid,
                                       mm_text** csv, size_t* violations);
MM_API mm_status mm_sweep_truthfulness_instance(const mm_instance* instance, int32_t grid,
                                                mm_text** csv, size_t* violations);

#ifdef __cplusplus
}
#endif

#endif /* MOBMATCH_H_ */
