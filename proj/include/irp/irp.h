/*
 * irp.h - C interface to the biobjective inventory routing solver.
 *
 * All objects are opaque handles created by an irp_*_create/load/... call and
 * released with the matching irp_*_free. Every fallible call returns an
 * irp_status; on failure, irp_last_error() describes the problem for the
 * calling thread until its next failing call.
 *
 * Handles are not internally synchronized, except irp_server which may be
 * stopped from any thread.
 */
#ifndef IRP_IRP_H
#define IRP_IRP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IRP_BUILDING_LIBRARY)
#    define IRP_API __declspec(dllexport)
#  else
#    define IRP_API __declspec(dllimport)
#  endif
#else
#  define IRP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irp_status {
  IRP_OK = 0,
  IRP_ERR_IO = 1,         /* missing or unwritable file */
  IRP_ERR_FORMAT = 2,     /* unparsable or inconsistent input document */
  IRP_ERR_VALIDATION = 3, /* instance violates the problem assumptions */
  IRP_ERR_CONTRACT = 4,   /* invalid argument or configuration */
  IRP_ERR_INTERNAL = 5
} irp_status;

typedef enum irp_vrp_solver {
  IRP_VRP_SAVINGS = 0,
  IRP_VRP_RTR = 1,
  IRP_VRP_EXACT = 2 /* brute force, at most 8 stops per period */
} irp_vrp_solver;

typedef struct irp_instance irp_instance;
typedef struct irp_validation irp_validation;
typedef struct irp_result irp_result;
typedef struct irp_routing_problem irp_routing_problem;
typedef struct irp_routing_solution irp_routing_solution;
typedef struct irp_server irp_server;

IRP_API const char* irp_version(void);
IRP_API const char* irp_last_error(void);
IRP_API const char* irp_status_name(irp_status status);

/* ---- instances ---------------------------------------------------------- */

IRP_API irp_status irp_instance_load(const char* path, irp_instance** out);
IRP_API irp_status irp_instance_parse(const char* text, size_t length, irp_instance** out);
IRP_API irp_status irp_instance_save(const irp_instance* inst, const char* path);
IRP_API void irp_instance_free(irp_instance* inst);

IRP_API size_t irp_instance_customer_count(const irp_instance* inst);
IRP_API int32_t irp_instance_horizon(const irp_instance* inst);
IRP_API const char* irp_instance_name(const irp_instance* inst);

/* Structural problems are reported through the status; assumption
 * violations through the returned report. */
IRP_API irp_status irp_instance_validate(const irp_instance* inst, irp_validation** out);
IRP_API int irp_validation_ok(const irp_validation* report);
IRP_API size_t irp_validation_count(const irp_validation* report);
IRP_API const char* irp_validation_message(const irp_validation* report, size_t index);
IRP_API void irp_validation_free(irp_validation* report);

/* Objectives of one frequency vector (length = customer count). */
IRP_API irp_status irp_evaluate(const irp_instance* inst, const int32_t* freqs, size_t count,
                                irp_vrp_solver solver, uint64_t seed, double* inventory,
                                double* distance);

/* ---- benchmark generation ----------------------------------------------- */

typedef struct irp_scenario_spec {
  char kind;                  /* 'a', 'b' or 'c' */
  int32_t horizon;            /* periods, default 240 */
  double deviation;           /* default 0.25 */
  uint64_t seed;
  double storage_cap_factor;  /* Q_i = ceil(factor * base demand), default 10 */
} irp_scenario_spec;

IRP_API void irp_scenario_spec_default(irp_scenario_spec* spec);

/* clamped (optional) receives the number of draws reduced to min(Q_i, C). */
IRP_API irp_status irp_generate(const char* geometry_path, const irp_scenario_spec* spec,
                                int64_t vehicle_cap, irp_instance** out, size_t* clamped);

/* ---- search ------------------------------------------------------------- */

typedef struct irp_search_config {
  int32_t ref_points;     /* odd, >= 3 */
  irp_vrp_solver solver;
  uint64_t seed;
  int32_t mixed_samples;  /* per consecutive frequency pair, default 5 */
  int64_t max_steps;      /* <= 0: unlimited */
  int64_t max_evaluations;
  double max_seconds;
  int32_t threads;        /* 0: all cores */
} irp_search_config;

typedef struct irp_stats {
  int64_t steps;
  int64_t evaluations;
  int64_t archive_size;
  double cpu_seconds;
  double elapsed_seconds;
} irp_stats;

IRP_API void irp_search_config_default(irp_search_config* cfg);

IRP_API irp_status irp_solve(const irp_instance* inst, const irp_search_config* cfg,
                             irp_result** out);

/* Exhaustive front over {1..max_freq}^n with exact routing; refuses more
 * than 10^6 vectors. */
IRP_API irp_status irp_enumerate(const irp_instance* inst, int32_t max_freq, int32_t threads,
                                 irp_result** out);

IRP_API void irp_result_stats(const irp_result* res, irp_stats* out);
IRP_API size_t irp_result_size(const irp_result* res);
/* Entry index in inventory-ascending order. freqs may be NULL; otherwise it
 * receives customer-count values. */
IRP_API irp_status irp_result_entry(const irp_result* res, size_t index, double* inventory,
                                    double* distance, int32_t* freqs);
IRP_API irp_status irp_result_write_archive(const irp_result* res, const char* path);
IRP_API irp_status irp_result_write_bundle(const irp_result* res, const char* dir);
/* Space separated key=value summary; owned by the result. */
IRP_API const char* irp_result_stats_line(const irp_result* res);
IRP_API void irp_result_free(irp_result* res);

/* ---- single VRP --------------------------------------------------------- */

IRP_API irp_status irp_routing_problem_load(const char* path, irp_routing_problem** out);
IRP_API void irp_routing_problem_free(irp_routing_problem* p);
IRP_API irp_status irp_vrp_solve(const irp_routing_problem* p, irp_vrp_solver solver,
                                 uint64_t seed, irp_routing_solution** out);
IRP_API double irp_routing_solution_distance(const irp_routing_solution* s);
IRP_API size_t irp_routing_solution_route_count(const irp_routing_solution* s);
IRP_API irp_status irp_routing_solution_save(const irp_routing_solution* s, const char* path);
IRP_API void irp_routing_solution_free(irp_routing_solution* s);

/* ---- decision-support service ------------------------------------------- */

IRP_API irp_status irp_server_create(const char* data_dir, irp_server** out);
/* Optional directory with a built web client, served at "/". */
IRP_API irp_status irp_server_set_static_dir(irp_server* server, const char* dir);
/* Blocks until irp_server_stop is called from another thread. */
IRP_API irp_status irp_server_listen(irp_server* server, const char* host, int port);
IRP_API void irp_server_stop(irp_server* server);
IRP_API void irp_server_free(irp_server* server);

#ifdef __cplusplus
}
#endif

#endif /* IRP_IRP_H */
