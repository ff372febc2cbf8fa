/* lgpolymer: log-gamma directed polymer simulation and verification toolkit.
 *
 * C interface of the shared library.  Suite entry points take a JSON config
 * (UTF-8, flat keys; see README) and hand back an opaque report holding a
 * JSON verdict, a human-readable summary, and named CSV artifacts.  All
 * functions return LGP_OK on success; on error, lgp_last_error() describes
 * the failure for the calling thread.
 */
#ifndef LGPOLYMER_H
#define LGPOLYMER_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgp_status {
    LGP_OK = 0,
    LGP_CHECK_FAILED = 1,   /* suite ran, at least one check failed */
    LGP_INVALID_ARGUMENT = 2,
    LGP_ACCURACY_ERROR = 3, /* numerical contract could not be met */
    LGP_INTERNAL_ERROR = 4
} lgp_status;

typedef struct lgp_report lgp_report;

const char* lgp_version(void);

/* Thread-local message for the most recent failing call. */
const char* lgp_last_error(void);

/* Verification suites.  A NULL or empty config selects the defaults.  The
 * report is created even when checks fail (status LGP_CHECK_FAILED); it is
 * only absent for invalid configs or internal errors. */
lgp_status lgp_verify_grsk(const char* config_json, lgp_report** out);
lgp_status lgp_verify_identity(const char* config_json, lgp_report** out);
lgp_status lgp_verify_laplace(const char* config_json, lgp_report** out);
lgp_status lgp_verify_whittaker(const char* config_json, lgp_report** out);
lgp_status lgp_dist_table(const char* config_json, lgp_report** out);
lgp_status lgp_experiment_phase(const char* config_json, lgp_report** out);

/* Report accessors; pointers are owned by the report. */
int lgp_report_passed(const lgp_report* r);
const char* lgp_report_json(const lgp_report* r);
const char* lgp_report_text(const lgp_report* r);
size_t lgp_report_artifact_count(const lgp_report* r);
const char* lgp_report_artifact_name(const lgp_report* r, size_t index);
const char* lgp_report_artifact_data(const lgp_report* r, size_t index);
void lgp_report_free(lgp_report* r);

/* Scalar conveniences. */
lgp_status lgp_tracy_widom_gue(double t, double* out);
lgp_status lgp_bbp_cdf(double t, const double* b, size_t nb, double* out);
lgp_status lgp_gaussian_cdf(double t, double* out);
lgp_status lgp_critical_theta(double theta, double p, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LGPOLYMER_H */
