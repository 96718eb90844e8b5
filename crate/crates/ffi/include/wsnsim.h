/* C interface to the wsnsim sensor-network lifetime simulator. */

#ifndef WSNSIM_H
#define WSNSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum wsnsim_status {
  WSNSIM_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  WSNSIM_STATUS_NULL_POINTER = 1,
  /**
   * An argument was rejected (bad protocol value, bad parameter).
   */
  WSNSIM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A string argument was not valid UTF-8.
   */
  WSNSIM_STATUS_INVALID_UTF8 = 3,
  /**
   * Config text could not be parsed.
   */
  WSNSIM_STATUS_PARSE_ERROR = 4,
  /**
   * A file could not be read.
   */
  WSNSIM_STATUS_IO_ERROR = 5,
  /**
   * The simulation itself failed.
   */
  WSNSIM_STATUS_SIMULATION_ERROR = 6,
  /**
   * The caller's buffer cannot hold the result.
   */
  WSNSIM_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  WSNSIM_STATUS_PANIC = 8,
} wsnsim_status;

/**
 * Protocol selector for [`wsnsim_simulate`]; pass the numeric value.
 */
typedef enum wsnsim_protocol {
  WSNSIM_PROTOCOL_LEACH = 0,
  WSNSIM_PROTOCOL_FFA = 1,
  WSNSIM_PROTOCOL_JFA = 2,
} wsnsim_protocol;

/**
 * Opaque simulation configuration handle.
 */
typedef struct wsnsim_config wsnsim_config;

/**
 * Opaque handle to one finished simulation run.
 */
typedef struct wsnsim_run wsnsim_run;

/**
 * Per-round snapshot mirroring one row of the rounds CSV.
 */
typedef struct wsnsim_round_stats {
  /**
   * Round number, starting at 1.
   */
  uint32_t round;
  /**
   * Nodes alive after the round's data frame.
   */
  uint32_t alive;
  /**
   * Cluster heads elected this round; 0 means a direct-to-base round.
   */
  uint32_t head_count;
  /**
   * Optimizer hazard jumps this round.
   */
  uint32_t jumps;
  /**
   * Residual network energy after the round, joules.
   */
  double total_energy_j;
  /**
   * Energy dissipated during the round, joules.
   */
  double dissipated_j;
} wsnsim_round_stats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Explanation of the most recent failure on this thread, or NULL when the
 * last call succeeded. Free with [`wsnsim_string_free`].
 */
char *wsnsim_last_error_message(void);

/**
 * New configuration holding every default. Free with
 * [`wsnsim_config_free`]. NULL only on internal failure.
 */
struct wsnsim_config *wsnsim_config_default(void);

/**
 * Parse `key = value` config text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum wsnsim_status wsnsim_config_from_text(const char *text, struct wsnsim_config **out);

/**
 * Read and parse a config file into a new handle stored in `*out`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum wsnsim_status wsnsim_config_from_file(const char *path, struct wsnsim_config **out);

/**
 * Canonical `key = value` rendering of a config; parsing it back yields
 * the same configuration. Free with [`wsnsim_string_free`].
 *
 * # Safety
 * `config` must be a live handle from this library or NULL.
 */
char *wsnsim_config_dump(const struct wsnsim_config *config);

/**
 * Release a config handle. NULL is ignored.
 *
 * # Safety
 * `config` must be a live handle from this library or NULL; it must not
 * be used afterwards.
 */
void wsnsim_config_free(struct wsnsim_config *config);

/**
 * Simulate one full network lifetime and store the run in `*out`.
 * `protocol` takes a [`wsnsim_protocol`] value.
 *
 * # Safety
 * `config` must be a live handle and `out` a valid pointer.
 */
enum wsnsim_status wsnsim_simulate(const struct wsnsim_config *config,
                                   uint32_t protocol,
                                   uint64_t seed,
                                   struct wsnsim_run **out);

/**
 * Lifetime milestones of a run: rounds until the first, half, and last
 * node death (0 = not reached within the round budget).
 *
 * # Safety
 * `run` must be a live handle; each out pointer must be valid or NULL.
 */
enum wsnsim_status wsnsim_run_lifetime(const struct wsnsim_run *run,
                                       uint32_t *fnd,
                                       uint32_t *hnd,
                                       uint32_t *lnd);

/**
 * Number of rounds the run played; 0 for a NULL handle.
 *
 * # Safety
 * `run` must be a live handle or NULL.
 */
uint32_t wsnsim_run_round_count(const struct wsnsim_run *run);

/**
 * Copy round `index` (0-based) into `*out`.
 *
 * # Safety
 * `run` must be a live handle and `out` a valid pointer.
 */
enum wsnsim_status wsnsim_run_round(const struct wsnsim_run *run,
                                    uint32_t index,
                                    struct wsnsim_round_stats *out);

/**
 * Copy the head node ids of round `index` (0-based, election order) into
 * `buffer`. `*written` receives the head count even when the buffer is
 * too small, so a NULL buffer with capacity 0 sizes the allocation.
 *
 * # Safety
 * `run` must be a live handle, `written` a valid pointer, and `buffer`
 * valid for `capacity` writes (or NULL when `capacity` is 0).
 */
enum wsnsim_status wsnsim_run_round_heads(const struct wsnsim_run *run,
                                          uint32_t index,
                                          uint32_t *buffer,
                                          uintptr_t capacity,
                                          uintptr_t *written);

/**
 * Per-round CSV table of a run, identical to the CLI's `rounds_*.csv`.
 * Free with [`wsnsim_string_free`].
 *
 * # Safety
 * `run` must be a live handle or NULL.
 */
char *wsnsim_run_rounds_csv(const struct wsnsim_run *run);

/**
 * One-row lifetime summary CSV of a run, identical to the CLI's
 * `summary_*.csv`. Free with [`wsnsim_string_free`].
 *
 * # Safety
 * `run` must be a live handle or NULL.
 */
char *wsnsim_run_summary_csv(const struct wsnsim_run *run);

/**
 * Release a run handle. NULL is ignored.
 *
 * # Safety
 * `run` must be a live handle from this library or NULL; it must not be
 * used afterwards.
 */
void wsnsim_run_free(struct wsnsim_run *run);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `text` must come from this library and must not be used afterwards.
 */
void wsnsim_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WSNSIM_H */
