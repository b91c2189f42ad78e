/* Perikon C API: peridynamic simulation of wet-concrete impact.
 *
 * All entry points are thread-compatible but not thread-safe on a shared
 * config handle. Functions return PERIKON_OK on success; on failure the
 * thread-local message from perikon_last_error() describes the problem.
 */
#ifndef PERIKON_H
#define PERIKON_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum perikon_status {
    PERIKON_OK = 0,
    PERIKON_ERR_CONFIG = 1,   /* bad configuration / schema violation */
    PERIKON_ERR_RUNTIME = 2,  /* numerical instability during a run */
    PERIKON_ERR_IO = 3,       /* filesystem failure */
    PERIKON_ERR_INVALID = 4   /* invalid argument (null handle, bad value) */
} perikon_status;

typedef struct perikon_config perikon_config; /* opaque */

const char* perikon_version(void);

/* Message describing the most recent failure on this thread. */
const char* perikon_last_error(void);

/* --- configuration ------------------------------------------------- */

perikon_status perikon_config_load(const char* path, perikon_config** out);
perikon_status perikon_config_parse(const char* text, perikon_config** out);
void perikon_config_free(perikon_config* cfg);

perikon_status perikon_config_set(perikon_config* cfg, const char* key, const char* value);
/* Resolved value (defaults materialized). Truncates to buflen-1 bytes. */
perikon_status perikon_config_get(const perikon_config* cfg, const char* key, char* buf,
                                  size_t buflen);
perikon_status perikon_config_write(const perikon_config* cfg, const char* path);

/* Schema plus cross-field validation for the configured scenario. */
perikon_status perikon_validate(const perikon_config* cfg);

/* --- runs ----------------------------------------------------------- */

typedef struct perikon_wave_result {
    double wave_speed;    /* m/s between the two stations */
    double modulus_ratio; /* (C_w / C_w_ref)^2 against the zero-porosity run */
} perikon_wave_result;

typedef struct perikon_impact_result {
    double residual_velocity; /* m/s */
    double peak_acceleration; /* m/s^2 */
    double penetration_depth; /* m */
    double crater_radius;     /* m */
    double crater_depth;      /* m */
    double scabbing_radius;   /* m */
    double scabbing_depth;    /* m */
} perikon_impact_result;

/* out_dir may be NULL or empty to skip file output. Result pointers may be
 * NULL when only the files are wanted. */
perikon_status perikon_run_homogenize(const perikon_config* cfg, const char* out_dir);
perikon_status perikon_run_wave(const perikon_config* cfg, const char* out_dir,
                                perikon_wave_result* result);
perikon_status perikon_run_impact(const perikon_config* cfg, const char* out_dir,
                                  perikon_impact_result* result);

/* --- scalar kernels -------------------------------------------------- */

/* Effective bulk/shear moduli of mortar with matrix Young's modulus E and
 * Poisson ratio nu at the given porosity and saturation. */
perikon_status perikon_effective_moduli(double youngs, double poisson, double water_bulk,
                                        double f1, double f2, double porosity,
                                        double saturation, double* bulk_out,
                                        double* shear_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PERIKON_H */
