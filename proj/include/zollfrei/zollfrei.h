/* SPDX-License-Identifier: Apache-2.0 */
/* Stable C interface. All strings are UTF-8; returned strings are freed with zf_free_string. */
#ifndef ZOLLFREI_H
#define ZOLLFREI_H

#if defined(__GNUC__)
#define ZF_API __attribute__((visibility("default")))
#else
#define ZF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* values match the CLI exit codes */
typedef enum zf_status {
    ZF_OK = 0,
    ZF_TOLERANCE = 2,
    ZF_PRECONDITION = 3,
    ZF_IO = 4,
    ZF_INTERNAL = 5
} zf_status;

typedef struct zf_context zf_context;

ZF_API const char* zf_version(void);

/* config_json may be NULL or "" for defaults. On failure *out is NULL and
   zf_last_error() describes the problem. */
ZF_API zf_status zf_context_create(const char* config_json, zf_context** out);
ZF_API void zf_context_destroy(zf_context* ctx);

/* thread-local; valid until the next failing call on this thread */
ZF_API const char* zf_last_error(void);

/* resolved config (defaults filled in) as JSON */
ZF_API zf_status zf_resolved_config(const zf_context* ctx, char** json_out);

/* command: eigen | verify | disks | admissible | monopole-dump | asd-check.
   out_dir may be NULL to skip file output. *report_json receives the report
   even when the status is ZF_TOLERANCE. */
ZF_API zf_status zf_run(zf_context* ctx, const char* command, const char* out_dir, char** report_json);

ZF_API void zf_free_string(char* s);

/* point evaluations against the context's generator */
ZF_API zf_status zf_q_eigenvalue(int degree, double* out);
ZF_API zf_status zf_transform_R(const zf_context* ctx, double t, const double y[3], double* out);
ZF_API zf_status zf_transform_Q(const zf_context* ctx, double t, const double y[3], double* out);
ZF_API zf_status zf_monopole_V(const zf_context* ctx, double t, const double y[3], double* out);
/* homogeneous coordinates of the holomorphic disk through (s, t, lambda) at omega,
   unit norm, as 4 (re, im) pairs */
ZF_API zf_status zf_disk_point(const zf_context* ctx, double s, double t, double lam_re, double lam_im, double w_re,
                        double w_im, double z_out[8]);

#ifdef __cplusplus
}
#endif

#endif
