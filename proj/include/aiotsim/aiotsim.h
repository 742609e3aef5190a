/* C interface to the A-IoT CBRA simulator. Opaque handles, status codes,
 * and a caller-supplied error buffer; safe to use from plain C or via FFI. */

#ifndef AIOTSIM_H
#define AIOTSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aiot_status {
    AIOT_OK = 0,
    AIOT_ERR_CONFIG = 2,  /* bad configuration (file or programmatic) */
    AIOT_ERR_RUNTIME = 3, /* I/O or execution failure */
    AIOT_ERR_ARG = 4      /* null handle / invalid argument */
} aiot_status;

typedef struct aiot_config aiot_config;

const char* aiot_version(void);

/* All defaults applied; equivalent to loading an empty config file. */
aiot_status aiot_config_create(aiot_config** out);

/* Key-value config file. On error, a diagnostic (with line number where
 * applicable) is copied into err (if non-NULL, truncated to err_cap). */
aiot_status aiot_config_load(const char* path, aiot_config** out,
                             char* err, size_t err_cap);

/* Set one key exactly as it would appear in the config file. */
aiot_status aiot_config_set(aiot_config* cfg, const char* key, const char* value,
                            char* err, size_t err_cap);

/* 1 when the config carries sweep_* keys, else 0. */
int aiot_config_is_sweep(const aiot_config* cfg);

/* Canonical text form; round-trips through aiot_config_load. Returns the
 * number of bytes (excluding the terminator) the full text needs; writes up
 * to buf_cap-1 bytes when buf is non-NULL. */
size_t aiot_config_emit(const aiot_config* cfg, char* buf, size_t buf_cap);

/* Single experiment. Writes the metrics CSV to out_csv; trace_jsonl may be
 * NULL to skip the per-round trace. */
aiot_status aiot_run(const aiot_config* cfg, const char* out_csv,
                     const char* trace_jsonl, char* err, size_t err_cap);

/* Full (policy x N x R) sweep into out_dir. */
aiot_status aiot_sweep(const aiot_config* cfg, const char* out_dir,
                       char* err, size_t err_cap);

/* Closed-form curves only. */
aiot_status aiot_analytic(const aiot_config* cfg, const char* out_csv,
                          char* err, size_t err_cap);

void aiot_config_free(aiot_config* cfg);

#ifdef __cplusplus
}
#endif

#endif /* AIOTSIM_H */
